#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "negcat/orbit.hpp"

namespace negcat {

/// Object of an ambient triangulated category: ids of its indecomposable
/// summands, kept sorted by the ambient's part order (Ambient::sort_obj).
using AmbObj = std::vector<int>;

/// Triangle completing a morphism f: x -> y. Morphism coordinates are always
/// relative to the canonical hom basis of their endpoint pair.
struct AmbTriangle {
  AmbObj cone;
  FpVec incl;  // y -> cone
  FpVec proj;  // cone -> suspended x
};

/// Common surface of the two concrete categories the verification machinery
/// runs in: the bounded derived category of the linear quiver and its orbit
/// quotient. Objects are id multisets; morphisms are coordinate vectors over
/// canonical hom bases, so all higher algorithms reduce to F_p linear algebra
/// plus the three structural callbacks (compose, suspend, cone).
class Ambient {
 public:
  virtual ~Ambient() = default;

  virtual uint32_t prime() const = 0;
  /// Finite search space of indecomposables for exhaustive enumerations. For
  /// the orbit category this is every indecomposable; for the derived
  /// category a configured shift window.
  virtual std::vector<int> universe() const = 0;
  virtual std::string ind_name(int id) const = 0;
  /// Part order of the underlying category; AmbObj vectors are sorted by it.
  virtual bool ind_less(int a, int b) const = 0;
  virtual int shift_ind(int id, int k) const = 0;
  virtual int hom_dim_pair(int x, int y) const = 0;
  /// Shape constraint a simple system must satisfy in this category beyond
  /// hom orthogonality (the diagonal rules in the orbit model, nothing in the
  /// derived category).
  virtual bool simple_system_shape(const std::vector<int>& ids) const = 0;
  /// How many negative suspension degrees the orthogonality test covers.
  virtual int orthogonality_depth() const = 0;

  virtual FpVec compose(const AmbObj& x, const AmbObj& y, const AmbObj& z, const FpVec& g,
                        const FpVec& f) const = 0;
  virtual FpVec shift_mor(const AmbObj& x, const AmbObj& y, const FpVec& f, int k) const = 0;
  virtual AmbTriangle cone(const AmbObj& x, const AmbObj& y, const FpVec& f) const = 0;
  /// Third vertex only; cheaper than cone() where the triangle maps are not
  /// needed.
  virtual AmbObj cone_obj(const AmbObj& x, const AmbObj& y, const FpVec& f) const = 0;
  virtual FpVec identity_coords(const AmbObj& x) const = 0;
  /// Coordinates of the inclusion of / projection onto the part-th summand.
  virtual FpVec part_incl(const AmbObj& x, int part) const = 0;
  virtual FpVec part_proj(const AmbObj& x, int part) const = 0;

  void sort_obj(AmbObj& x) const;
  AmbObj of(int id) const { return {id}; }
  AmbObj sum(const AmbObj& x, const AmbObj& y) const;
  AmbObj shift_obj(const AmbObj& x, int k) const;
  int hom_dim(const AmbObj& x, const AmbObj& y) const;
  FpVec zero_mor(const AmbObj& x, const AmbObj& y) const;
  bool same_obj(const AmbObj& x, const AmbObj& y) const { return x == y; }

  /// Matrix of u |-> f . u from Hom(t, x) to Hom(t, y), columns indexed by the
  /// basis of Hom(t, x).
  FpMatrix post_compose(const AmbObj& t, const AmbObj& x, const AmbObj& y, const FpVec& f) const;
  /// Matrix of u |-> u . f from Hom(y, t) to Hom(x, t).
  FpMatrix pre_compose(const AmbObj& t, const AmbObj& x, const AmbObj& y, const FpVec& f) const;

  /// Morphism sum -> y whose restriction to part j is comps[j].
  FpVec from_parts(const AmbObj& sum, const AmbObj& y, const std::vector<FpVec>& comps) const;
  /// Morphism x -> sum whose component into part j is comps[j].
  FpVec into_parts(const AmbObj& x, const AmbObj& sum, const std::vector<FpVec>& comps) const;
  /// Component of f through the part-th summand of the source sum.
  FpVec restrict_src(const AmbObj& sum, const AmbObj& y, const FpVec& f, int part) const;
  /// Component of f into the part-th summand of the target sum.
  FpVec restrict_dst(const AmbObj& x, const AmbObj& sum, const FpVec& f, int part) const;
};

/// The orbit category of a fixed (w, n) as an Ambient: ids index the
/// admissible diagonals in lexicographic order.
class OrbitAmbient : public Ambient {
 public:
  explicit OrbitAmbient(const OrbitContext& ctx);

  uint32_t prime() const override { return ctx_.prime(); }
  std::vector<int> universe() const override;
  std::string ind_name(int id) const override;
  bool ind_less(int a, int b) const override { return a < b; }
  int shift_ind(int id, int k) const override;
  int hom_dim_pair(int x, int y) const override;
  bool simple_system_shape(const std::vector<int>& ids) const override;
  int orthogonality_depth() const override { return 0; }
  FpVec compose(const AmbObj& x, const AmbObj& y, const AmbObj& z, const FpVec& g,
                const FpVec& f) const override;
  FpVec shift_mor(const AmbObj& x, const AmbObj& y, const FpVec& f, int k) const override;
  AmbTriangle cone(const AmbObj& x, const AmbObj& y, const FpVec& f) const override;
  AmbObj cone_obj(const AmbObj& x, const AmbObj& y, const FpVec& f) const override;
  FpVec identity_coords(const AmbObj& x) const override;
  FpVec part_incl(const AmbObj& x, int part) const override;
  FpVec part_proj(const AmbObj& x, int part) const override;

  const OrbitContext& ctx() const { return ctx_; }
  int id_of(Diagonal d) const;
  Diagonal diagonal_of(int id) const { return diags_[static_cast<size_t>(id)]; }
  OrbitObject obj_of(const AmbObj& x) const;
  AmbObj ids_of(const OrbitObject& x) const;
  OrbitMorphism mor_of(const AmbObj& x, const AmbObj& y, const FpVec& f) const;

 private:
  OrbitContext ctx_;
  std::vector<Diagonal> diags_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<int, int>, int> homdim_cache_;
  mutable std::map<std::pair<std::pair<AmbObj, AmbObj>, FpVec>, AmbTriangle> cone_cache_;
  mutable std::map<std::pair<std::pair<AmbObj, AmbObj>, FpVec>, AmbObj> cone_obj_cache_;
};

/// The bounded derived category of the linear quiver with n vertices as an
/// Ambient: ids index shifted intervals, a configured shift window up front
/// and anything else on first contact.
class DerivedAmbient : public Ambient {
 public:
  DerivedAmbient(int n, uint32_t p = 2, int shift_lo = -2, int shift_hi = 3);

  uint32_t prime() const override { return p_; }
  std::vector<int> universe() const override;
  std::string ind_name(int id) const override;
  bool ind_less(int a, int b) const override;
  int shift_ind(int id, int k) const override;
  int hom_dim_pair(int x, int y) const override;
  bool simple_system_shape(const std::vector<int>& ids) const override { return true; }
  int orthogonality_depth() const override { return 2; }
  FpVec compose(const AmbObj& x, const AmbObj& y, const AmbObj& z, const FpVec& g,
                const FpVec& f) const override;
  FpVec shift_mor(const AmbObj& x, const AmbObj& y, const FpVec& f, int k) const override;
  AmbTriangle cone(const AmbObj& x, const AmbObj& y, const FpVec& f) const override;
  AmbObj cone_obj(const AmbObj& x, const AmbObj& y, const FpVec& f) const override;
  FpVec identity_coords(const AmbObj& x) const override;
  FpVec part_incl(const AmbObj& x, int part) const override;
  FpVec part_proj(const AmbObj& x, int part) const override;

  int n() const { return n_; }
  int id_of(ShiftedInterval s) const;
  ShiftedInterval interval_of(int id) const;
  DerivedObject obj_of(const AmbObj& x) const;
  AmbObj ids_of(const DerivedObject& x) const;

 private:
  int n_;
  uint32_t p_;
  int universe_size_;
  mutable std::mutex mu_;
  mutable std::vector<ShiftedInterval> ind_;
  mutable std::map<ShiftedInterval, int> index_;
};

}  // namespace negcat
