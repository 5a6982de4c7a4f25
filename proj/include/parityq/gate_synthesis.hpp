#pragma once

// Analytic pulse-schedule synthesis for multi-qubit parity gates on a target
// with always-on couplings to its neighbors.
//
// A schedule is a list of bias magnitudes applied to the target qubit, one
// gate unit tau each. Within a step the target sees the effective bias
// E = eps_T + sum_i s_i xi_i conditioned on the frozen neighbor states. A
// step performs
//   * an X flip (up to a tracked -i phase) on subspaces where E = 0 exactly
//     and the tunneling satisfies Delta_T * tau = (4n+1)/4, and
//   * an identity on subspaces where E*tau is a nonzero integer, up to a
//     residual of order (Delta_T/E)^2 which the audit reports.
//
// Every flip subspace pins its bias to E = 0, so the minimal schedule is the
// set of distinct required biases; feasibility is the integer condition on
// all remaining (subspace, step) pairs.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "parityq/lattice.hpp"

namespace parityq {

inline constexpr double kIntegerTol = 1e-9;   // on E*tau
inline constexpr double kBiasTol = 1e-12;     // bias magnitudes considered equal

enum class GateAction : std::uint8_t { Identity = 0, FlipX = 1 };

// Map from each basis configuration of the target's neighbors to the
// required target operation. Configurations index with the first control as
// the most significant bit.
struct SubspaceGateSpec {
    int target = 0;
    std::vector<int> controls;
    std::vector<GateAction> assignment;  // size 2^controls

    std::size_t num_controls() const { return controls.size(); }
    std::size_t num_configs() const { return std::size_t{1} << controls.size(); }

    // Parity gate: flip the target iff the XOR of the active controls is 1.
    static SubspaceGateSpec parity(int target, std::vector<int> controls,
                                   std::vector<bool> active) {
        if (active.size() != controls.size())
            throw std::invalid_argument("SubspaceGateSpec::parity: active mask size mismatch");
        SubspaceGateSpec spec;
        spec.target = target;
        spec.controls = std::move(controls);
        const std::size_t k = spec.controls.size();
        spec.assignment.resize(std::size_t{1} << k, GateAction::Identity);
        for (std::size_t cfg = 0; cfg < spec.assignment.size(); ++cfg) {
            int parity = 0;
            for (std::size_t i = 0; i < k; ++i)
                if (active[i]) parity ^= static_cast<int>((cfg >> (k - 1 - i)) & 1u);
            spec.assignment[cfg] = parity ? GateAction::FlipX : GateAction::Identity;
        }
        return spec;
    }

    std::vector<int> config_bits(std::size_t cfg) const {
        const std::size_t k = controls.size();
        std::vector<int> bits(k);
        for (std::size_t i = 0; i < k; ++i) bits[i] = static_cast<int>((cfg >> (k - 1 - i)) & 1u);
        return bits;
    }
};

struct PulseStep {
    double bias = 0.0;      // GHz, applied to the target
    double duration = 0.0;  // ns
};

struct PulseSchedule {
    std::vector<PulseStep> steps;
    // Phase factor picked up by every flipped subspace (one X-executing step
    // per flipped subspace), tracked rather than corrected.
    std::complex<double> tracked_phase{0.0, -1.0};

    double total_duration() const {
        double t = 0.0;
        for (auto& s : steps) t += s.duration;
        return t;
    }

    std::vector<double> biases() const {
        std::vector<double> out;
        for (auto& s : steps) out.push_back(s.bias);
        return out;
    }
};

// Full (subspace x step) feasibility table for a candidate schedule.
struct ScheduleAudit {
    struct Entry {
        std::size_t config = 0;
        std::vector<int> config_bits;
        GateAction action = GateAction::Identity;
        std::size_t step = 0;
        double step_bias = 0.0;       // GHz
        double effective_bias = 0.0;  // GHz
        double e_tau = 0.0;
        bool is_flip_step = false;    // this step realizes the X for this subspace
        bool ok = true;
        double residual = 0.0;        // (Delta/E)^2 leakage scale for identity entries
    };

    double delta_t = 0.0;
    double tau = 0.0;
    bool x_timing_ok = true;
    std::vector<Entry> entries;
    std::vector<std::string> violations;

    bool feasible() const { return x_timing_ok && violations.empty(); }

    std::string to_string() const {
        std::ostringstream os;
        os << "x_timing_ok: " << (x_timing_ok ? "yes" : "no") << "\n";
        os << "feasible: " << (feasible() ? "yes" : "no") << "\n";
        for (const auto& e : entries) {
            os << "config ";
            for (int b : e.config_bits) os << b;
            os << (e.action == GateAction::FlipX ? " flip" : " idle") << " step " << e.step
               << " bias " << e.step_bias << " E " << e.effective_bias << " E*tau " << e.e_tau
               << (e.is_flip_step ? " [X]" : "") << (e.ok ? "" : " VIOLATION");
            if (!e.is_flip_step) os << " residual " << e.residual;
            os << "\n";
        }
        for (const auto& v : violations) os << "violation: " << v << "\n";
        return os.str();
    }
};

class SynthesisError : public std::runtime_error {
  public:
    SynthesisError(const std::string& summary, std::vector<std::string> violations,
                   std::optional<ScheduleAudit> audit = std::nullopt)
        : std::runtime_error(make_what(summary, violations)),
          violations_(std::move(violations)),
          audit_(std::move(audit)) {}

    const std::vector<std::string>& violations() const { return violations_; }
    const std::optional<ScheduleAudit>& audit() const { return audit_; }

  private:
    static std::string make_what(const std::string& summary,
                                 const std::vector<std::string>& violations) {
        std::string w = summary;
        for (const auto& v : violations) w += "\n  " + v;
        return w;
    }

    std::vector<std::string> violations_;
    std::optional<ScheduleAudit> audit_;
};

namespace detail {

inline bool is_integer(double x, double tol = kIntegerTol) {
    return std::abs(x - std::round(x)) <= tol;
}

// Delta_T * tau must be (4n+1)/4 so an E = 0 step is a quarter period.
inline bool x_timing_valid(double delta_t, double tau) {
    const double x = 4.0 * delta_t * tau;  // should be 4n+1
    return is_integer(x, 4.0 * kIntegerTol) &&
           (static_cast<long long>(std::llround(x)) % 4 + 4) % 4 == 1;
}

inline double signed_coupling_sum(const std::vector<double>& xi, const std::vector<int>& bits) {
    double s = 0.0;
    for (std::size_t i = 0; i < xi.size(); ++i) s += (1 - 2 * bits[i]) * xi[i];
    return s;
}

inline std::string config_label(const std::vector<int>& bits) {
    std::string s;
    for (int b : bits) s += static_cast<char>('0' + b);
    return s;
}

}  // namespace detail

// Distinct biases forced by the flip subspaces (each needs E = 0 under
// exactly one step), sorted ascending. This is the minimal candidate
// schedule; audit_schedule decides feasibility.
inline std::vector<double> forced_step_biases(const SubspaceGateSpec& spec,
                                              const std::vector<double>& xi) {
    if (xi.size() != spec.num_controls())
        throw std::invalid_argument("forced_step_biases: coupling count mismatch");
    std::vector<double> biases;
    for (std::size_t cfg = 0; cfg < spec.num_configs(); ++cfg) {
        if (spec.assignment[cfg] != GateAction::FlipX) continue;
        double required = -detail::signed_coupling_sum(xi, spec.config_bits(cfg));
        bool seen = false;
        for (double b : biases)
            if (std::abs(b - required) <= kBiasTol) seen = true;
        if (!seen) biases.push_back(required);
    }
    std::sort(biases.begin(), biases.end());
    return biases;
}

// Checks every (subspace, step) pair of a candidate schedule: flip subspaces
// must hit E = 0 under exactly one step and a nonzero integer E*tau under the
// others; identity subspaces must give nonzero integer E*tau throughout.
inline ScheduleAudit audit_schedule(const SubspaceGateSpec& spec, const std::vector<double>& xi,
                                    double delta_t, double tau, const std::vector<double>& biases,
                                    int search_bound = 64) {
    if (xi.size() != spec.num_controls())
        throw std::invalid_argument("audit_schedule: coupling count mismatch");
    ScheduleAudit audit;
    audit.delta_t = delta_t;
    audit.tau = tau;
    audit.x_timing_ok = detail::x_timing_valid(delta_t, tau);
    if (!audit.x_timing_ok)
        audit.violations.push_back("tunneling-duration product " + std::to_string(delta_t * tau) +
                                   " is not of the form (4n+1)/4");
    for (std::size_t cfg = 0; cfg < spec.num_configs(); ++cfg) {
        auto bits = spec.config_bits(cfg);
        const double s = detail::signed_coupling_sum(xi, bits);
        const GateAction action = spec.assignment[cfg];
        int flip_steps = 0;
        for (std::size_t k = 0; k < biases.size(); ++k) {
            ScheduleAudit::Entry e;
            e.config = cfg;
            e.config_bits = bits;
            e.action = action;
            e.step = k;
            e.step_bias = biases[k];
            e.effective_bias = biases[k] + s;
            e.e_tau = e.effective_bias * tau;
            const bool zero = std::abs(e.effective_bias) <= kBiasTol;
            if (action == GateAction::FlipX && zero) {
                e.is_flip_step = true;
                ++flip_steps;
            } else {
                e.residual = (delta_t * delta_t) /
                             (delta_t * delta_t + e.effective_bias * e.effective_bias);
                const long long rounded = std::llround(e.e_tau);
                e.ok = detail::is_integer(e.e_tau) && rounded != 0 &&
                       std::llabs(rounded) <= search_bound;
                if (!e.ok) {
                    std::string why = zero ? "accidental X (E = 0)"
                                           : "E*tau = " + std::to_string(e.e_tau) +
                                                 " is not a usable nonzero integer";
                    audit.violations.push_back("config " + detail::config_label(bits) + " step " +
                                               std::to_string(k) + " (bias " +
                                               std::to_string(biases[k]) + " GHz): " + why);
                }
            }
            audit.entries.push_back(std::move(e));
        }
        if (action == GateAction::FlipX && flip_steps != 1)
            audit.violations.push_back("config " + detail::config_label(bits) + ": " +
                                       std::to_string(flip_steps) +
                                       " X-executing steps (need exactly 1)");
    }
    return audit;
}

// General solver: derives the minimal bias-step schedule for an arbitrary
// subspace assignment over 1..4 controls with fixed couplings. Step order is
// deterministic (ascending bias).
inline PulseSchedule synthesize_general(const SubspaceGateSpec& spec, const std::vector<double>& xi,
                                        double delta_t, double tau, int search_bound = 64) {
    std::vector<double> biases = forced_step_biases(spec, xi);
    ScheduleAudit audit = audit_schedule(spec, xi, delta_t, tau, biases, search_bound);
    if (!audit.feasible())
        throw SynthesisError("pulse synthesis infeasible for the requested subspace gate",
                             audit.violations, audit);
    PulseSchedule schedule;
    for (double b : biases) schedule.steps.push_back({b, tau});
    return schedule;
}

namespace detail {

struct NamedCondition {
    std::string name;
    double value;  // GHz; identity magnitude that must have nonzero integer value*tau
};

// The seven residual identity magnitudes of the two-active gate once the
// active pair shares coupling `a` and the dummy pair shares `d`.
inline std::vector<NamedCondition> two_active_conditions(double a, double d,
                                                         const std::string& an,
                                                         const std::string& dn) {
    return {
        {"2*" + an, 2 * a},
        {"2*" + dn, 2 * d},
        {"4*" + dn, 4 * d},
        {"2*" + an + "+2*" + dn, 2 * a + 2 * d},
        {"2*" + an + "-2*" + dn, 2 * a - 2 * d},
        {"2*" + an + "+4*" + dn, 2 * a + 4 * d},
        {"2*" + an + "-4*" + dn, 2 * a - 4 * d},
    };
}

inline std::vector<std::string> failing_conditions(const std::vector<NamedCondition>& conds,
                                                   double tau) {
    std::vector<std::string> bad;
    for (const auto& c : conds) {
        const double etau = c.value * tau;
        if (!is_integer(etau) || std::llround(etau) == 0)
            bad.push_back("identity condition " + c.name + " fails: E = " +
                          std::to_string(c.value) + " GHz, E*tau = " + std::to_string(etau));
    }
    return bad;
}

inline PulseSchedule two_active_schedule(const std::array<double, 4>& xi, double delta_t,
                                         double tau, bool vertical) {
    const double up = xi[0], down = xi[1], left = xi[2], right = xi[3];
    std::vector<std::string> bad;
    if (std::abs(up - down) > kBiasTol)
        bad.push_back("xi_up and xi_down must be equal (got " + std::to_string(up) + ", " +
                      std::to_string(down) + ")");
    if (std::abs(left - right) > kBiasTol)
        bad.push_back("xi_left and xi_right must be equal (got " + std::to_string(left) + ", " +
                      std::to_string(right) + ")");
    if (!bad.empty())
        throw SynthesisError("two-active synthesis precondition failed", bad);

    const double active = vertical ? up : left;
    const double dummy = vertical ? left : up;
    const std::string active_name = vertical ? "xi_ud" : "xi_lr";
    const std::string dummy_name = vertical ? "xi_lr" : "xi_ud";
    if (!x_timing_valid(delta_t, tau))
        bad.push_back("tunneling-duration product " + std::to_string(delta_t * tau) +
                      " is not of the form (4n+1)/4");
    auto cond_bad = failing_conditions(two_active_conditions(active, dummy, active_name, dummy_name), tau);
    bad.insert(bad.end(), cond_bad.begin(), cond_bad.end());
    if (!bad.empty())
        throw SynthesisError("two-active synthesis conditions unsatisfied", bad);

    // Bias triple (-(d1+d2), 0, +(d1+d2)) over the dummy pair.
    const double swing = vertical ? left + right : up + down;
    PulseSchedule schedule;
    schedule.steps = {{-swing, tau}, {0.0, tau}, {+swing, tau}};
    return schedule;
}

}  // namespace detail

// Parity gate on the vertically coupled pair (up, down); the horizontal pair
// acts as dummies whose influence the bias triple cancels. Requires
// xi_up = xi_down and xi_left = xi_right.
inline PulseSchedule synthesize_two_active_vertical(const std::array<double, 4>& xi,
                                                    double delta_t, double tau) {
    return detail::two_active_schedule(xi, delta_t, tau, /*vertical=*/true);
}

// Mirror case: parity of the horizontal pair, vertical pair as dummies.
inline PulseSchedule synthesize_two_active_horizontal(const std::array<double, 4>& xi,
                                                      double delta_t, double tau) {
    return detail::two_active_schedule(xi, delta_t, tau, /*vertical=*/false);
}

// Parity of all four neighbors with a common coupling xi: two steps at
// +/- 2*xi. Needs 2*xi*tau integer (which covers the 4xi and 6xi subspace
// magnitudes as well).
inline PulseSchedule synthesize_four_active(double xi, double delta_t, double tau) {
    std::vector<std::string> bad;
    if (!detail::x_timing_valid(delta_t, tau))
        bad.push_back("tunneling-duration product " + std::to_string(delta_t * tau) +
                      " is not of the form (4n+1)/4");
    const double etau = 2.0 * xi * tau;
    if (!detail::is_integer(etau) || std::llround(etau) == 0)
        bad.push_back("identity condition 2*xi fails: E = " + std::to_string(2.0 * xi) +
                      " GHz, E*tau = " + std::to_string(etau));
    if (!bad.empty()) throw SynthesisError("four-active synthesis conditions unsatisfied", bad);
    PulseSchedule schedule;
    schedule.steps = {{+2.0 * xi, tau}, {-2.0 * xi, tau}};
    return schedule;
}

// Bias that freezes a non-participating qubit: every neighbor configuration
// must see a nonzero integer E*tau. Among valid values the one closest to
// `preferred` wins (2 GHz in the reference parameter set); an isolated qubit
// gets 0 by minimality.
inline double freeze_bias(const LatticeSpec& spec, int site, double tau, double preferred = 2.0) {
    std::vector<double> xi;
    for (int nbr : spec.neighbor_sites(site)) xi.push_back(spec.coupling(site, nbr));
    if (xi.empty()) return 0.0;

    std::vector<std::string> bad;
    for (double c : xi)
        if (!detail::is_integer(2.0 * c * tau))
            bad.push_back("coupling " + std::to_string(c) +
                          " GHz: 2*xi*tau is not an integer, no bias can freeze all configurations");
    if (!bad.empty()) throw SynthesisError("freeze bias infeasible", bad);

    double xi_sum = 0.0;
    for (double c : xi) xi_sum += c;
    const long long m0 = std::llround((preferred + xi_sum) * tau);
    const std::size_t nconfigs = std::size_t{1} << xi.size();

    auto valid = [&](long long m) {
        for (std::size_t cfg = 0; cfg < nconfigs; ++cfg) {
            double s = 0.0;
            for (std::size_t i = 0; i < xi.size(); ++i)
                s += (1 - 2 * static_cast<int>((cfg >> i) & 1u)) * xi[i];
            const double etau = (static_cast<double>(m) / tau - xi_sum + s) * tau;
            if (!detail::is_integer(etau) || std::llround(etau) == 0) return false;
        }
        return true;
    };

    for (long long radius = 0; radius <= 1000; ++radius) {
        for (long long m : {m0 - radius, m0 + radius}) {
            if (valid(m)) return static_cast<double>(m) / tau - xi_sum;
            if (radius == 0) break;
        }
    }
    throw SynthesisError("freeze bias infeasible",
                         {"no integer-compatible bias found within search bound"});
}

}  // namespace parityq
