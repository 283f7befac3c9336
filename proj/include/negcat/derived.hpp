#pragma once

#include <map>
#include <string>
#include <vector>

#include "negcat/typea.hpp"

namespace negcat {

/// Indecomposable of the derived category: the interval module placed at
/// suspension power `shift` (cohomological degree -shift).
struct ShiftedInterval {
  int shift = 0;
  Interval iv;
  auto operator<=>(const ShiftedInterval&) const = default;
};

std::string to_string(ShiftedInterval x);

/// Canonical multiset of shifted intervals.
struct DerivedObject {
  std::vector<ShiftedInterval> parts;

  void add(ShiftedInterval x);
  void add(const DerivedObject& other);
  bool empty() const { return parts.empty(); }
  bool operator==(const DerivedObject& rhs) const = default;

  static DerivedObject of(ShiftedInterval x) { return {{x}}; }
  static DerivedObject of_module(const ModuleObject& m, int shift = 0);
};

std::string to_string(const DerivedObject& x);

ShiftedInterval shift_of(ShiftedInterval x, int k);
DerivedObject shift_of(const DerivedObject& x, int k);

/// AR translate as an auto-equivalence of the derived category: the module
/// translate away from projectives, and P(i) -> suspension inverse of I(i).
ShiftedInterval tau_D(int n, ShiftedInterval x);
ShiftedInterval tau_D_inv(int n, ShiftedInterval x);
DerivedObject tau_D(int n, const DerivedObject& x);
DerivedObject tau_D_inv(int n, const DerivedObject& x);

/// Serre functor: suspension composed with the AR translate.
ShiftedInterval nu_D(int n, ShiftedInterval x);

/// Hom dimension between indecomposables by the shift-0/shift-1 rule
/// (module Hom at equal shifts, first extensions one step up, zero otherwise).
int hom_dim_D_pair(ShiftedInterval x, ShiftedInterval y);

/// Fast Ext^1 overlap rule; exhaustively cross-checked against ext1_dim.
int ext1_closed(Interval x, Interval y);

/// Additive extension of hom_dim_D_pair to multisets.
int hom_dim_D_obj(const DerivedObject& x, const DerivedObject& y);

/// Bounded complex of projectives: gens[k] lists projective indices in
/// cohomological degree lo+k, diff[k] maps degree lo+k to lo+k+1 in the
/// coefficient basis of canonical inclusions P(i) -> P(j), j <= i.
struct ProjComplex {
  int n = 0;
  uint32_t p = 2;
  int lo = 0;
  std::vector<std::vector<int>> gens;
  std::vector<FpMatrix> diff;

  int hi() const { return lo + static_cast<int>(gens.size()) - 1; }
  const std::vector<int>& at(int deg) const;
  int width(int deg) const { return static_cast<int>(at(deg).size()); }
};

/// Chain map between two complexes, stored as per-degree coefficient blocks;
/// missing degrees are zero blocks.
struct ChainMap {
  std::map<int, FpMatrix> blocks;
};

/// Block of f at a degree, materializing zeros for absent degrees.
FpMatrix chain_block(const ChainMap& f, int deg, const ProjComplex& src, const ProjComplex& dst);

/// Degrees and row positions of each summand inside a canonical resolution.
struct CanonLoc {
  struct Part {
    int deg0 = 0;   // degree of the top projective
    int pos0 = 0;   // its row within gens[deg0]
    bool has_p1 = false;
    int pos1 = 0;   // row of the syzygy projective within gens[deg0 - 1]
  };
  std::vector<Part> parts;
};

/// Canonical resolution: per part the two-term projective resolution, summed
/// in part order. Only p = 2 is supported at the chain level; comparison
/// isomorphisms below rely on signs being trivial.
ProjComplex resolve(int n, const DerivedObject& x, uint32_t p, CanonLoc* loc = nullptr);

bool is_chain_map(const ProjComplex& x, const ProjComplex& y, const ChainMap& f);
ChainMap compose_chain(const ProjComplex& x, const ProjComplex& y, const ProjComplex& z,
                       const ChainMap& g, const ChainMap& f);
ChainMap identity_chain(const ProjComplex& x);

/// Basis of chain maps modulo null-homotopic ones.
std::vector<ChainMap> hom_basis_D(const ProjComplex& x, const ProjComplex& y);
int hom_dim_D(const ProjComplex& x, const ProjComplex& y);
bool homotopic(const ProjComplex& x, const ProjComplex& y, const ChainMap& f, const ChainMap& g);

/// Decomposition of an arbitrary bounded complex of projectives, via
/// cohomology subquotients at every degree.
DerivedObject decompose_complex(const ProjComplex& c);

/// Canonical form of a complex together with an explicit homotopy equivalence
/// in both directions.
struct Comparison {
  DerivedObject object;
  ProjComplex canon;
  CanonLoc loc;
  ChainMap to_c;    // canon -> c, quasi-isomorphism
  ChainMap from_c;  // homotopy inverse of to_c
};
Comparison compare_to_canonical(const ProjComplex& c);

/// Morphisms between decomposed objects are coefficient matrices over the
/// canonical pair basis: entry (t, s) scales the canonical generator from
/// part s of the source to part t of the target (pairs of dimension zero
/// must carry coefficient zero).
FpMatrix zero_coeffs(const DerivedObject& x, const DerivedObject& y, uint32_t p);
FpMatrix identity_coeffs(const DerivedObject& x, uint32_t p);
bool coeffs_legal(const DerivedObject& x, const DerivedObject& y, const FpMatrix& f);

/// Chain-level realization of a coefficient matrix between the canonical
/// resolutions of x and y.
ChainMap realize(int n, const DerivedObject& x, const DerivedObject& y, const FpMatrix& f,
                 uint32_t p);

/// Coefficients of a chain map between canonical resolutions, modulo homotopy.
FpMatrix express(int n, const DerivedObject& x, const DerivedObject& y, const ChainMap& f,
                 uint32_t p);

/// Composition of coefficient morphisms (x --f--> y --g--> z).
FpMatrix compose_coeffs(int n, const DerivedObject& x, const DerivedObject& y,
                        const DerivedObject& z, const FpMatrix& g, const FpMatrix& f, uint32_t p);

/// Positions (t, s) of the one-dimensional pairs, in row-major order; these
/// index a basis of Hom(x, y), so coefficient matrices flatten to vectors.
std::vector<std::pair<int, int>> hom_entries(const DerivedObject& x, const DerivedObject& y);
FpVec coeffs_to_vec(const DerivedObject& x, const DerivedObject& y, const FpMatrix& f);
FpMatrix coeffs_from_vec(const DerivedObject& x, const DerivedObject& y, const FpVec& v,
                         uint32_t p);

/// Matrix of u |-> f . u from Hom(t, x) to Hom(t, y) in the hom_entries bases.
FpMatrix post_compose_matrix(int n, const DerivedObject& t, const DerivedObject& x,
                             const DerivedObject& y, const FpMatrix& f, uint32_t p);
/// Matrix of u |-> u . f from Hom(y, t) to Hom(x, t).
FpMatrix pre_compose_matrix(int n, const DerivedObject& t, const DerivedObject& x,
                            const DerivedObject& y, const FpMatrix& f, uint32_t p);

/// Cone of a coefficient morphism with the two canonical triangle maps
/// y -> cone -> Σx, all expressed in canonical coordinates.
struct TrianglePack {
  DerivedObject cone;
  FpMatrix incl;  // y -> cone
  FpMatrix proj;  // cone -> Σx
};
TrianglePack cone_with_maps(int n, const DerivedObject& x, const DerivedObject& y,
                            const FpMatrix& f, uint32_t p);

/// Cone as an object only; skips the triangle-map extraction.
DerivedObject cone_object(int n, const DerivedObject& x, const DerivedObject& y,
                          const FpMatrix& f, uint32_t p);

}  // namespace negcat
