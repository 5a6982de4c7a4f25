#pragma once

// Qubit-array geometry: grid sites with roles, nearest-neighbor edges, the
// alternating coupling pattern of the 9-qubit testbed, and checkerboard
// surface-code layouts.

#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace parityq {

enum class SiteRole : std::uint8_t { Data, MeasureX, MeasureZ, Plain };

enum class Direction : std::uint8_t { Up = 0, Down = 1, Left = 2, Right = 3 };

inline const char* direction_name(Direction d) {
    switch (d) {
        case Direction::Up: return "up";
        case Direction::Down: return "down";
        case Direction::Left: return "left";
        case Direction::Right: return "right";
    }
    return "?";
}

// Rectangular grid of qubits. Sites are indexed row-major, row 0 at the top.
// Edges exist exactly between horizontal/vertical nearest neighbors; each
// carries a coupling strength in GHz.
struct LatticeSpec {
    int rows = 0;
    int cols = 0;
    std::vector<SiteRole> roles;                     // row-major, size rows*cols
    std::map<std::pair<int, int>, double> couplings; // keyed (min_site, max_site)

    int num_sites() const { return rows * cols; }

    int site(int r, int c) const {
        if (r < 0 || r >= rows || c < 0 || c >= cols)
            throw std::out_of_range("LatticeSpec::site: coordinates out of range");
        return r * cols + c;
    }

    std::pair<int, int> coords(int s) const {
        check_site(s);
        return {s / cols, s % cols};
    }

    SiteRole role(int s) const {
        check_site(s);
        return roles[s];
    }

    bool has_edge(int a, int b) const {
        return couplings.count(ordered(a, b)) != 0;
    }

    double coupling(int a, int b) const {
        auto it = couplings.find(ordered(a, b));
        if (it == couplings.end())
            throw std::invalid_argument("LatticeSpec::coupling: no such edge");
        return it->second;
    }

    // Neighbors in fixed up/down/left/right order; boundary sites return
    // fewer entries.
    std::vector<std::pair<Direction, int>> neighbors(int s) const {
        auto [r, c] = coords(s);
        std::vector<std::pair<Direction, int>> out;
        if (r > 0) out.emplace_back(Direction::Up, site(r - 1, c));
        if (r + 1 < rows) out.emplace_back(Direction::Down, site(r + 1, c));
        if (c > 0) out.emplace_back(Direction::Left, site(r, c - 1));
        if (c + 1 < cols) out.emplace_back(Direction::Right, site(r, c + 1));
        return out;
    }

    std::vector<int> neighbor_sites(int s) const {
        std::vector<int> out;
        for (auto& [d, n] : neighbors(s)) out.push_back(n);
        return out;
    }

    std::vector<int> sites_with_role(SiteRole wanted) const {
        std::vector<int> out;
        for (int s = 0; s < num_sites(); ++s)
            if (roles[s] == wanted) out.push_back(s);
        return out;
    }

    bool is_measure(int s) const {
        SiteRole r = role(s);
        return r == SiteRole::MeasureX || r == SiteRole::MeasureZ;
    }

    void check_site(int s) const {
        if (s < 0 || s >= num_sites())
            throw std::out_of_range("LatticeSpec: site index out of range");
    }

    static std::pair<int, int> ordered(int a, int b) {
        return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
    }
};

namespace detail {

// Shared edge construction: vertical couplings alternate (xi_up, xi_down)
// down each column, horizontal couplings alternate (xi_left, xi_right) along
// each row, so the pattern tiles consistently in both directions.
inline void add_alternating_edges(LatticeSpec& spec, double xi_up, double xi_down,
                                  double xi_left, double xi_right) {
    for (int r = 0; r < spec.rows; ++r) {
        for (int c = 0; c < spec.cols; ++c) {
            int s = spec.site(r, c);
            if (r + 1 < spec.rows)
                spec.couplings[LatticeSpec::ordered(s, spec.site(r + 1, c))] =
                    (r % 2 == 0) ? xi_up : xi_down;
            if (c + 1 < spec.cols)
                spec.couplings[LatticeSpec::ordered(s, spec.site(r, c + 1))] =
                    (c % 2 == 0) ? xi_left : xi_right;
        }
    }
}

}  // namespace detail

// Sites of the 3x3 testbed, named by position relative to the center target.
struct Testbed9q {
    static constexpr int target = 4;
    static constexpr int up = 1;
    static constexpr int down = 7;
    static constexpr int left = 3;
    static constexpr int right = 5;
    static constexpr std::array<int, 4> corners{0, 2, 6, 8};        // spectators
    static constexpr std::array<int, 4> controls{1, 7, 3, 5};       // up,down,left,right
};

// 3x3 grid of plain qubits around a central target. The couplings incident
// to the center are (xi_up, xi_down, xi_left, xi_right); outer edges follow
// the same alternation pattern so the block tiles into a larger array.
inline LatticeSpec build_testbed_9q(double xi_up = 0.6, double xi_down = 0.6,
                                    double xi_left = 0.4, double xi_right = 0.4) {
    LatticeSpec spec;
    spec.rows = 3;
    spec.cols = 3;
    spec.roles.assign(9, SiteRole::Plain);
    detail::add_alternating_edges(spec, xi_up, xi_down, xi_left, xi_right);
    return spec;
}

// Checkerboard surface-code layout on an odd rows x odd cols grid:
//   - data qubits on sites with even (row+col) parity,
//   - measure-X ancillas at (even row, odd col),
//   - measure-Z ancillas at (odd row, even col).
// Every edge touches exactly one measure site; edges incident to a measure-Z
// site carry xi_z, edges incident to a measure-X site carry xi_x.
//
// With this assignment every data qubit sees measure-X ancillas either
// vertically (odd,odd data) or horizontally (even,even data), and measure-Z
// ancillas on the remaining pair of directions.
inline LatticeSpec build_surface_layout(int rows, int cols, double xi_z = 0.4,
                                        double xi_x = 0.6) {
    if (rows < 3 || cols < 3)
        throw std::invalid_argument("build_surface_layout: dimensions must be at least 3");
    if (rows % 2 == 0 || cols % 2 == 0)
        throw std::invalid_argument("build_surface_layout: dimensions must be odd");
    LatticeSpec spec;
    spec.rows = rows;
    spec.cols = cols;
    spec.roles.resize(rows * cols);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            SiteRole role;
            if ((r + c) % 2 == 0)
                role = SiteRole::Data;
            else
                role = (r % 2 == 0) ? SiteRole::MeasureX : SiteRole::MeasureZ;
            spec.roles[spec.site(r, c)] = role;
        }
    }
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            int s = spec.site(r, c);
            for (auto [d, n] : spec.neighbors(s)) {
                if (n < s) continue;
                SiteRole mrole = spec.is_measure(s) ? spec.role(s) : spec.role(n);
                spec.couplings[LatticeSpec::ordered(s, n)] =
                    (mrole == SiteRole::MeasureZ) ? xi_z : xi_x;
            }
        }
    }
    return spec;
}

// ASCII-art role grid: D = data, X/Z = measure ancillas, o = plain.
inline std::string ascii_render(const LatticeSpec& spec) {
    std::string out;
    for (int r = 0; r < spec.rows; ++r) {
        for (int c = 0; c < spec.cols; ++c) {
            if (c) out += ' ';
            switch (spec.role(spec.site(r, c))) {
                case SiteRole::Data: out += 'D'; break;
                case SiteRole::MeasureX: out += 'X'; break;
                case SiteRole::MeasureZ: out += 'Z'; break;
                case SiteRole::Plain: out += 'o'; break;
            }
        }
        out += '\n';
    }
    return out;
}

}  // namespace parityq
