#include "anyonforge/lattice_defect.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace anyonforge {

PauliOperator::PauliOperator(int num_sites) : num_sites_(num_sites) {
    if (num_sites < 0) {
        throw std::invalid_argument("negative site count");
    }
    x_.assign(num_sites, 0);
    z_.assign(num_sites, 0);
}

PauliOperator PauliOperator::identity(int num_sites) {
    return PauliOperator(num_sites);
}

PauliOperator PauliOperator::from_letters(int num_sites,
                                          const std::vector<std::pair<int, char>>& letters) {
    PauliOperator op(num_sites);
    for (const auto& [site, letter] : letters) {
        op.set_letter(site, letter);
    }
    return op;
}

void PauliOperator::set_letter(int site, char letter) {
    if (site < 0 || site >= num_sites_) {
        throw std::out_of_range("site " + std::to_string(site) + " outside 0.." +
                                std::to_string(num_sites_ - 1));
    }
    switch (letter) {
        case 'I':
            x_[site] = 0;
            z_[site] = 0;
            break;
        case 'X':
            x_[site] = 1;
            z_[site] = 0;
            break;
        case 'Y':
            x_[site] = 1;
            z_[site] = 1;
            break;
        case 'Z':
            x_[site] = 0;
            z_[site] = 1;
            break;
        default:
            throw std::invalid_argument(std::string("bad Pauli letter '") + letter + "'");
    }
}

char PauliOperator::letter(int site) const {
    const bool x = x_.at(site), z = z_.at(site);
    if (x && z) return 'Y';
    if (x) return 'X';
    if (z) return 'Z';
    return 'I';
}

PauliOperator PauliOperator::operator*(const PauliOperator& rhs) const {
    if (num_sites_ != rhs.num_sites_) {
        throw std::invalid_argument("site spaces differ");
    }
    PauliOperator out(num_sites_);
    // Site letters are stored as i^{xz} X^x Z^z so that (1,1) is Y exactly.
    int phase = phase_ + rhs.phase_;
    for (int s = 0; s < num_sites_; ++s) {
        const int x1 = x_[s], z1 = z_[s], x2 = rhs.x_[s], z2 = rhs.z_[s];
        const int x3 = x1 ^ x2, z3 = z1 ^ z2;
        phase += x1 * z1 + x2 * z2 + 2 * z1 * x2 - x3 * z3;
        out.x_[s] = static_cast<std::uint8_t>(x3);
        out.z_[s] = static_cast<std::uint8_t>(z3);
    }
    out.phase_ = ((phase % 4) + 4) % 4;
    return out;
}

bool PauliOperator::is_identity() const {
    if (phase_ != 0) {
        return false;
    }
    return std::all_of(x_.begin(), x_.end(), [](std::uint8_t b) { return b == 0; }) &&
           std::all_of(z_.begin(), z_.end(), [](std::uint8_t b) { return b == 0; });
}

std::string PauliOperator::str() const {
    static const char* kPhases[] = {"", "i ", "- ", "-i "};
    std::string out = kPhases[phase_];
    bool any = false;
    for (int s = 0; s < num_sites_; ++s) {
        const char l = letter(s);
        if (l == 'I') {
            continue;
        }
        if (any) {
            out += ' ';
        }
        out += l + std::to_string(s);
        any = true;
    }
    if (!any) {
        out += 'I';
    }
    return out;
}

bool commutes(const PauliOperator& p, const PauliOperator& q) {
    if (p.num_sites() != q.num_sites()) {
        throw std::invalid_argument("site spaces differ");
    }
    int form = 0;
    for (int s = 0; s < p.num_sites(); ++s) {
        form ^= (p.x_bit(s) & q.z_bit(s)) ^ (p.z_bit(s) & q.x_bit(s));
    }
    return form == 0;
}

Boundary boundary_from_string(const std::string& s) {
    if (s == "smooth") return Boundary::smooth;
    if (s == "rough") return Boundary::rough;
    throw std::invalid_argument("boundary must be 'smooth' or 'rough', got '" + s + "'");
}

std::string to_string(Boundary b) {
    return b == Boundary::smooth ? "smooth" : "rough";
}

SideTags SideTags::parse(const std::string& comma_list) {
    SideTags tags;
    tags.cells.clear();
    std::string item;
    for (size_t pos = 0; pos <= comma_list.size(); ++pos) {
        if (pos == comma_list.size() || comma_list[pos] == ',') {
            if (!item.empty()) {
                tags.cells.push_back(boundary_from_string(item));
                item.clear();
            }
        } else {
            item += comma_list[pos];
        }
    }
    if (tags.cells.empty()) {
        tags.cells.push_back(Boundary::smooth);
    }
    return tags;
}

Boundary SideTags::at(int cell, int side_length) const {
    if (cells.size() == 1) {
        return cells.front();
    }
    if (static_cast<int>(cells.size()) != side_length) {
        throw std::invalid_argument("side tag list length " + std::to_string(cells.size()) +
                                    " does not match side length " + std::to_string(side_length));
    }
    return cells.at(cell);
}

BoundarySpec parse_boundary_spec(const std::string& text) {
    std::vector<std::string> sides;
    std::string side;
    for (size_t pos = 0; pos <= text.size(); ++pos) {
        if (pos == text.size() || text[pos] == ';') {
            sides.push_back(side);
            side.clear();
        } else {
            side += text[pos];
        }
    }
    if (sides.size() != 4) {
        throw std::invalid_argument("boundary spec needs four ';'-separated sides");
    }
    BoundarySpec spec;
    spec.top = SideTags::parse(sides[0]);
    spec.bottom = SideTags::parse(sides[1]);
    spec.left = SideTags::parse(sides[2]);
    spec.right = SideTags::parse(sides[3]);
    return spec;
}

namespace {

struct PatchIndex {
    int width, height;
    // Site indices: horizontal edges, vertical edges, then dangling edges of
    // the rough cells in order left, right, top, bottom.
    std::map<std::pair<int, int>, int> dangle_left, dangle_right, dangle_top, dangle_bottom;
    int total = 0;

    int horizontal(int i, int j) const { return i * width + j; }
    int vertical(int i, int j) const { return (height + 1) * width + i * (width + 1) + j; }
};

}  // namespace

StabilizerLattice build_patch(int width, int height, const BoundarySpec& boundary) {
    if (width < 2 || height < 2) {
        throw std::invalid_argument("patch needs width >= 2 and height >= 2");
    }
    PatchIndex idx{width, height, {}, {}, {}, {}, 0};
    idx.total = (height + 1) * width + height * (width + 1);

    // A vertex on a rough stretch of boundary carries a dangling edge if one
    // of its adjacent boundary cells is rough.
    auto rough_left = [&](int cell) { return boundary.left.at(cell, height) == Boundary::rough; };
    auto rough_right = [&](int cell) { return boundary.right.at(cell, height) == Boundary::rough; };
    auto rough_top = [&](int cell) { return boundary.top.at(cell, width) == Boundary::rough; };
    auto rough_bottom = [&](int cell) {
        return boundary.bottom.at(cell, width) == Boundary::rough;
    };

    std::vector<std::string> names((height + 1) * width + height * (width + 1));
    for (int i = 0; i <= height; ++i) {
        for (int j = 0; j < width; ++j) {
            names[idx.horizontal(i, j)] = "h(" + std::to_string(i) + "," + std::to_string(j) + ")";
        }
    }
    for (int i = 0; i < height; ++i) {
        for (int j = 0; j <= width; ++j) {
            names[idx.vertical(i, j)] = "v(" + std::to_string(i) + "," + std::to_string(j) + ")";
        }
    }
    auto add_dangle = [&](std::map<std::pair<int, int>, int>& table, int a, int b,
                          const std::string& name) {
        table[{a, b}] = idx.total;
        names.push_back(name);
        ++idx.total;
    };
    for (int i = 0; i <= height; ++i) {
        if ((i > 0 && rough_left(i - 1)) || (i < height && rough_left(i))) {
            add_dangle(idx.dangle_left, i, 0, "dl(" + std::to_string(i) + ")");
        }
    }
    for (int i = 0; i <= height; ++i) {
        if ((i > 0 && rough_right(i - 1)) || (i < height && rough_right(i))) {
            add_dangle(idx.dangle_right, i, 0, "dr(" + std::to_string(i) + ")");
        }
    }
    for (int j = 0; j <= width; ++j) {
        if ((j > 0 && rough_top(j - 1)) || (j < width && rough_top(j))) {
            add_dangle(idx.dangle_top, 0, j, "dt(" + std::to_string(j) + ")");
        }
    }
    for (int j = 0; j <= width; ++j) {
        if ((j > 0 && rough_bottom(j - 1)) || (j < width && rough_bottom(j))) {
            add_dangle(idx.dangle_bottom, 0, j, "db(" + std::to_string(j) + ")");
        }
    }

    StabilizerLattice lattice;
    lattice.num_sites_ = idx.total;
    lattice.site_names_ = std::move(names);

    // Vertex stars: X on every existing edge incident to the vertex.
    for (int i = 0; i <= height; ++i) {
        for (int j = 0; j <= width; ++j) {
            std::vector<std::pair<int, char>> letters;
            if (j > 0) letters.push_back({idx.horizontal(i, j - 1), 'X'});
            if (j < width) letters.push_back({idx.horizontal(i, j), 'X'});
            if (i > 0) letters.push_back({idx.vertical(i - 1, j), 'X'});
            if (i < height) letters.push_back({idx.vertical(i, j), 'X'});
            if (j == 0 && idx.dangle_left.count({i, 0})) {
                letters.push_back({idx.dangle_left.at({i, 0}), 'X'});
            }
            if (j == width && idx.dangle_right.count({i, 0})) {
                letters.push_back({idx.dangle_right.at({i, 0}), 'X'});
            }
            if (i == 0 && idx.dangle_top.count({0, j})) {
                letters.push_back({idx.dangle_top.at({0, j}), 'X'});
            }
            if (i == height && idx.dangle_bottom.count({0, j})) {
                letters.push_back({idx.dangle_bottom.at({0, j}), 'X'});
            }
            lattice.stabilizers_.push_back(
                {"star(" + std::to_string(i) + "," + std::to_string(j) + ")",
                 PauliOperator::from_letters(idx.total, letters)});
        }
    }

    // Full plaquettes: Z on the four edges bounding each face.
    for (int i = 0; i < height; ++i) {
        for (int j = 0; j < width; ++j) {
            lattice.stabilizers_.push_back(
                {"plaq(" + std::to_string(i) + "," + std::to_string(j) + ")",
                 PauliOperator::from_letters(idx.total, {{idx.horizontal(i, j), 'Z'},
                                                         {idx.horizontal(i + 1, j), 'Z'},
                                                         {idx.vertical(i, j), 'Z'},
                                                         {idx.vertical(i, j + 1), 'Z'}})});
        }
    }

    // Truncated plaquettes along rough cells: two dangling edges plus the
    // boundary edge they straddle.
    for (int i = 0; i < height; ++i) {
        if (rough_left(i)) {
            lattice.stabilizers_.push_back(
                {"rough_left(" + std::to_string(i) + ")",
                 PauliOperator::from_letters(idx.total, {{idx.dangle_left.at({i, 0}), 'Z'},
                                                         {idx.dangle_left.at({i + 1, 0}), 'Z'},
                                                         {idx.vertical(i, 0), 'Z'}})});
        }
        if (rough_right(i)) {
            lattice.stabilizers_.push_back(
                {"rough_right(" + std::to_string(i) + ")",
                 PauliOperator::from_letters(idx.total, {{idx.dangle_right.at({i, 0}), 'Z'},
                                                         {idx.dangle_right.at({i + 1, 0}), 'Z'},
                                                         {idx.vertical(i, width), 'Z'}})});
        }
    }
    for (int j = 0; j < width; ++j) {
        if (rough_top(j)) {
            lattice.stabilizers_.push_back(
                {"rough_top(" + std::to_string(j) + ")",
                 PauliOperator::from_letters(idx.total, {{idx.dangle_top.at({0, j}), 'Z'},
                                                         {idx.dangle_top.at({0, j + 1}), 'Z'},
                                                         {idx.horizontal(0, j), 'Z'}})});
        }
        if (rough_bottom(j)) {
            lattice.stabilizers_.push_back(
                {"rough_bottom(" + std::to_string(j) + ")",
                 PauliOperator::from_letters(idx.total, {{idx.dangle_bottom.at({0, j}), 'Z'},
                                                         {idx.dangle_bottom.at({0, j + 1}), 'Z'},
                                                         {idx.horizontal(height, j), 'Z'}})});
        }
    }
    return lattice;
}

StabilizerLattice build_torus(int width, int height) {
    if (width < 2 || height < 2) {
        throw std::invalid_argument("torus needs width >= 2 and height >= 2");
    }
    const int n = 2 * width * height;
    auto horizontal = [&](int i, int j) { return i * width + j; };
    auto vertical = [&](int i, int j) { return width * height + i * width + j; };

    StabilizerLattice lattice;
    lattice.num_sites_ = n;
    lattice.site_names_.resize(n);
    for (int i = 0; i < height; ++i) {
        for (int j = 0; j < width; ++j) {
            lattice.site_names_[horizontal(i, j)] =
                "h(" + std::to_string(i) + "," + std::to_string(j) + ")";
            lattice.site_names_[vertical(i, j)] =
                "v(" + std::to_string(i) + "," + std::to_string(j) + ")";
        }
    }
    for (int i = 0; i < height; ++i) {
        for (int j = 0; j < width; ++j) {
            lattice.stabilizers_.push_back(
                {"star(" + std::to_string(i) + "," + std::to_string(j) + ")",
                 PauliOperator::from_letters(
                     n, {{horizontal(i, j), 'X'},
                         {horizontal(i, (j + width - 1) % width), 'X'},
                         {vertical(i, j), 'X'},
                         {vertical((i + height - 1) % height, j), 'X'}})});
        }
    }
    for (int i = 0; i < height; ++i) {
        for (int j = 0; j < width; ++j) {
            lattice.stabilizers_.push_back(
                {"plaq(" + std::to_string(i) + "," + std::to_string(j) + ")",
                 PauliOperator::from_letters(n, {{horizontal(i, j), 'Z'},
                                                 {horizontal((i + 1) % height, j), 'Z'},
                                                 {vertical(i, j), 'Z'},
                                                 {vertical(i, (j + 1) % width), 'Z'}})});
        }
    }
    return lattice;
}

PauliOperator defect_operator(const StabilizerLattice& lattice,
                              const std::array<int, 5>& support) {
    static constexpr std::array<char, 5> kLetters = {'X', 'Y', 'Z', 'Z', 'Z'};
    for (size_t i = 0; i < support.size(); ++i) {
        if (support[i] < 0 || support[i] >= lattice.num_sites()) {
            throw std::out_of_range("support site " + std::to_string(support[i]) +
                                    " outside the lattice");
        }
        for (size_t j = i + 1; j < support.size(); ++j) {
            if (support[i] == support[j]) {
                throw std::invalid_argument("support sites must be distinct");
            }
        }
    }
    std::vector<std::pair<int, char>> letters;
    for (size_t i = 0; i < support.size(); ++i) {
        letters.push_back({support[i], kLetters[i]});
    }
    return PauliOperator::from_letters(lattice.num_sites(), letters);
}

std::vector<std::string> verify_defect(const StabilizerLattice& lattice,
                                       const std::array<int, 5>& support) {
    const PauliOperator q = defect_operator(lattice, support);
    std::vector<std::string> violations;
    for (const auto& [name, stabilizer] : lattice.stabilizers()) {
        if (!commutes(q, stabilizer)) {
            violations.push_back(name);
        }
    }
    return violations;
}

}  // namespace anyonforge
