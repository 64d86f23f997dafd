#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace anyonforge {

/// A multi-site Pauli operator in symplectic form: per-site X/Z bits plus a
/// fourth-root-of-unity phase exponent, with site letter Y = i XZ.
class PauliOperator {
  public:
    explicit PauliOperator(int num_sites);

    static PauliOperator identity(int num_sites);
    /// Builds from (site, letter) pairs; letters are X, Y or Z.
    static PauliOperator from_letters(int num_sites,
                                      const std::vector<std::pair<int, char>>& letters);

    int num_sites() const { return num_sites_; }
    bool x_bit(int site) const { return x_.at(site); }
    bool z_bit(int site) const { return z_.at(site); }
    void set_letter(int site, char letter);  // 'I', 'X', 'Y' or 'Z'
    char letter(int site) const;
    int phase_exponent() const { return phase_; }  // power of i, 0..3

    PauliOperator operator*(const PauliOperator& rhs) const;
    bool is_identity() const;
    bool operator==(const PauliOperator&) const = default;

    /// Space-separated letters with 0-indexed sites, e.g. "X2 Y3 Z4 Z5 Z6".
    std::string str() const;

  private:
    int num_sites_;
    std::vector<std::uint8_t> x_, z_;
    int phase_ = 0;
};

/// True iff the symplectic form x_P.z_Q + z_P.x_Q vanishes mod 2.
/// Throws on mismatched site spaces.
bool commutes(const PauliOperator& p, const PauliOperator& q);

enum class Boundary { smooth, rough };

Boundary boundary_from_string(const std::string& s);
std::string to_string(Boundary b);

/// Boundary type along one side, cell by cell.  One entry means the whole
/// side; otherwise the list length must equal the side length, so a side can
/// switch type partway and form a rough/smooth junction.
struct SideTags {
    std::vector<Boundary> cells = {Boundary::smooth};

    SideTags() = default;
    SideTags(Boundary uniform) : cells{uniform} {}
    SideTags(std::initializer_list<Boundary> list) : cells(list) {}
    static SideTags parse(const std::string& comma_list);

    Boundary at(int cell, int side_length) const;
};

struct BoundarySpec {
    SideTags top, bottom, left, right;
};

/// Parses "top;bottom;left;right" where each side is a comma list of
/// smooth/rough cell tags (a single tag covers the whole side).
BoundarySpec parse_boundary_spec(const std::string& text);

/// Edge-qubit lattice with named vertex (X-type) and plaquette (Z-type)
/// stabilizers.  Sites are indexed deterministically: horizontal edges
/// row-major, then vertical edges row-major, then dangling edges of rough
/// sides in order left, right, top, bottom.
class StabilizerLattice {
  public:
    int num_sites() const { return num_sites_; }
    const std::vector<std::string>& site_names() const { return site_names_; }
    const std::vector<std::pair<std::string, PauliOperator>>& stabilizers() const {
        return stabilizers_;
    }

    friend StabilizerLattice build_patch(int width, int height, const BoundarySpec& boundary);
    friend StabilizerLattice build_torus(int width, int height);

  private:
    int num_sites_ = 0;
    std::vector<std::string> site_names_;
    std::vector<std::pair<std::string, PauliOperator>> stabilizers_;
};

/// Rectangular patch of width x height faces with per-side boundary types.
/// Rough sides carry dangling edges and weight-3 boundary plaquettes; smooth
/// sides truncate the vertex stars instead.  Degenerate sizes (width or
/// height < 2) throw std::invalid_argument.
StabilizerLattice build_patch(int width, int height, const BoundarySpec& boundary);

/// Periodic lattice (no boundary); every edge sits in exactly two stars and
/// two plaquettes.
StabilizerLattice build_torus(int width, int height);

/// Point-defect operator with letters (X, Y, Z, Z, Z) on the given sites.
PauliOperator defect_operator(const StabilizerLattice& lattice, const std::array<int, 5>& support);

/// Names of every stabilizer that fails to commute with the defect operator
/// on the given support.  Empty report: the defect is a valid extra
/// stabilizer at that location.
std::vector<std::string> verify_defect(const StabilizerLattice& lattice,
                                       const std::array<int, 5>& support);

}  // namespace anyonforge
