#pragma once

#include <map>
#include <optional>
#include <vector>

#include "negcat/ambient.hpp"

namespace negcat {

/// Composition multiplicities over the simples of a fixed subcategory.
using ClassVec = std::vector<int>;

ClassVec vec_add(const ClassVec& a, const ClassVec& b);
ClassVec vec_sub(const ClassVec& a, const ClassVec& b);
int vec_total(const ClassVec& v);

/// Short exact structure witness: sub >--> total -->> quot, all three living
/// in the subcategory that produced it.
struct Conflation {
  AmbObj sub, total, quot;
  auto operator<=>(const Conflation&) const = default;
};

/// Extension-closed abelian subcategory presented by its simple objects.
/// Indecomposables carry their composition multiplicities, and the
/// conflations found while closing are kept for downstream monoid relations.
struct AbelianSubcat {
  const Ambient* amb = nullptr;
  std::vector<int> simples;
  std::vector<int> inds;
  std::map<int, ClassVec> class_vec;
  std::vector<Conflation> conflations;

  bool contains_ind(int id) const;
  bool contains(const AmbObj& x) const;
  ClassVec vec_of(const AmbObj& x) const;
  int length(const AmbObj& x) const { return vec_total(vec_of(x)); }
};

/// Shape predicate of the ambient plus hom orthogonality: identity-sized
/// endomorphism spaces, no homs between distinct members, and vanishing
/// negative extensions to the ambient's configured depth.
bool is_simple_minded(const Ambient& amb, const std::vector<int>& simples);

/// Least extension-closed set of indecomposables containing the given
/// simples, found by saturating middle terms of all extension classes.
/// Throws if the induced composition multiplicities are inconsistent.
AbelianSubcat extension_closure(const Ambient& amb, const std::vector<int>& simples);

/// True when Hom(a, Σ^{-i} a') vanishes for all members and 1 <= i <= depth.
bool negative_exts_vanish(const AbelianSubcat& A, int depth);

/// Middle term of the extension of quot by sub along a class in
/// Hom(quot, Σ sub): the desuspended third vertex of the completing triangle.
AmbObj extension_middle_obj(const Ambient& amb, const AmbObj& sub, const AmbObj& quot,
                            const FpVec& cls);

/// Class representatives spanning the nonzero directions of F_p^dim, one per
/// scalar line; with the zero vector prepended when with_zero is set.
std::vector<FpVec> projective_classes(int dim, uint32_t p, bool with_zero = false);

/// All conflations with end terms drawn from multisets of `inds` with at most
/// `end_parts` parts, deduplicated as object triples. Throws if some middle
/// leaves the span of `inds` (the set was not extension closed).
std::vector<Conflation> enumerate_conflations(const Ambient& amb, const std::vector<int>& inds,
                                              int end_parts);

/// Monomorphism / epimorphism tests through the triangle completing f:
/// mono when the third vertex stays in the subcategory, epi when it lands in
/// its suspension.
bool is_mono_in(const AbelianSubcat& A, const AmbObj& x, const AmbObj& y, const FpVec& f);
bool is_epi_in(const AbelianSubcat& A, const AmbObj& x, const AmbObj& y, const FpVec& f);

/// Every morphism of Hom(x, y) over the prime field, the zero one included.
std::vector<FpVec> all_homs(const Ambient& amb, const AmbObj& x, const AmbObj& y);

}  // namespace negcat
