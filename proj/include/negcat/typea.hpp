#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "negcat/fplinalg.hpp"

namespace negcat {

/// Interval [lo, hi] of vertices of the linear quiver 1 -> 2 -> ... -> n,
/// standing for the indecomposable module supported there.
struct Interval {
  int lo = 1;
  int hi = 1;
  auto operator<=>(const Interval&) const = default;
  int length() const { return hi - lo + 1; }
};

std::string to_string(Interval iv);

/// Multiset of intervals in canonical (lexicographic) order; the
/// Krull-Schmidt decomposition of a module.
struct ModuleObject {
  std::vector<Interval> parts;

  void normalize();
  void add(Interval iv);
  void add(const ModuleObject& other);
  bool empty() const { return parts.empty(); }
  int total_length() const;
  bool operator==(const ModuleObject& rhs) const = default;
};

std::string to_string(const ModuleObject& m);

/// Concrete representation of the linear quiver: dim[v] is the dimension at
/// vertex v+1, map[v] the matrix of V_{v+1} -> V_{v+2}.
struct Rep {
  int n = 0;
  uint32_t p = 2;
  std::vector<int> dim;
  std::vector<FpMatrix> map;
};

/// Morphism of representations: one matrix per vertex.
using RepMorphism = std::vector<FpMatrix>;

Rep zero_rep(int n, uint32_t p);
Rep interval_rep(int n, Interval iv, uint32_t p);
Rep direct_sum(const Rep& a, const Rep& b);
Rep rep_of(int n, const ModuleObject& m, uint32_t p);

std::vector<Interval> all_intervals(int n);
Interval projective(int n, int i);
Interval injective(int i);
Interval simple(int i);
bool is_projective(int n, Interval iv);

/// dim Hom(M[x], M[y]) by the overlap rule: 1 iff y.lo <= x.lo <= y.hi <= x.hi.
int hom_dim(Interval x, Interval y);

/// Basis of Hom(x, y) obtained by solving all commuting-square constraints.
std::vector<RepMorphism> hom_basis(const Rep& x, const Rep& y);

/// dim Hom computed purely from the linear system; independent check of hom_dim.
int hom_dim_oracle(const Rep& x, const Rep& y);

/// dim Ext^1(M[x], M[y]) from the two-term projective resolution of M[x]:
/// the cokernel of Hom(P0, y) -> Hom(P1, y) along P1 -> P0.
int ext1_dim(int n, Interval x, Interval y);

/// Middle term of the (unique up to scalar) nonsplit extension of x by y.
/// Requires ext1_dim(n, x, y) == 1; built as an explicit pushout and decomposed.
ModuleObject extension_middle(int n, Interval x, Interval y, uint32_t p);

/// Krull-Schmidt decomposition by the rank counting rule: the multiplicity of
/// [a,b] is r(a,b) - r(a-1,b) - r(a,b+1) + r(a-1,b+1) where r(a,b) is the rank
/// of the composite V_a -> V_b and out-of-range ranks are zero.
ModuleObject decompose(const Rep& r);

/// AR translate, found by brute-force search against the duality
/// dim Ext^1(x, y) = dim Hom(y, tau x) over all probes y; none for projectives.
std::optional<Interval> tau(int n, Interval x);

/// Explicit Krull-Schmidt splitting: for each summand of decompose(r), an
/// embedding into r that admits a retraction. Summands are peeled one at a
/// time, so the embeddings jointly give an isomorphism from the direct sum.
std::vector<std::pair<Interval, RepMorphism>> split_embeddings(const Rep& r);

/// Restriction of r to a subrepresentation spanned vertexwise by gens
/// (which must be closed under the structure maps).
Rep restrict_to_subspace(const Rep& r, const std::vector<std::vector<FpVec>>& gens);

/// Quotient of r by the subrepresentation spanned vertexwise by gens.
Rep quotient_by_subspace(const Rep& r, const std::vector<std::vector<FpVec>>& gens);

/// Kernel of a morphism as a representation (vertexwise kernels).
Rep morphism_kernel(const Rep& x, const Rep& y, const RepMorphism& f);

/// Cokernel of a morphism as a representation (vertexwise quotients by image).
Rep morphism_cokernel(const Rep& x, const Rep& y, const RepMorphism& f);

}  // namespace negcat
