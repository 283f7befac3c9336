#include "negcat/typea.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

namespace negcat {

namespace {

void check_interval(int n, Interval iv) {
  if (iv.lo < 1 || iv.lo > iv.hi || iv.hi > n)
    throw std::invalid_argument("interval out of range: " + to_string(iv));
}

// Flatten a morphism into one coefficient vector (vertex blocks in order).
FpVec flatten(const RepMorphism& f) {
  FpVec out;
  for (const auto& m : f)
    for (int r = 0; r < m.rows(); ++r)
      for (int c = 0; c < m.cols(); ++c) out.push_back(m.at(r, c));
  return out;
}

}  // namespace

std::string to_string(Interval iv) {
  return "[" + std::to_string(iv.lo) + "," + std::to_string(iv.hi) + "]";
}

void ModuleObject::normalize() { std::sort(parts.begin(), parts.end()); }

void ModuleObject::add(Interval iv) {
  parts.insert(std::upper_bound(parts.begin(), parts.end(), iv), iv);
}

void ModuleObject::add(const ModuleObject& other) {
  for (Interval iv : other.parts) add(iv);
}

int ModuleObject::total_length() const {
  int total = 0;
  for (Interval iv : parts) total += iv.length();
  return total;
}

std::string to_string(const ModuleObject& m) {
  if (m.empty()) return "0";
  std::string out;
  for (size_t i = 0; i < m.parts.size(); ++i) {
    if (i) out += "+";
    out += to_string(m.parts[i]);
  }
  return out;
}

Rep zero_rep(int n, uint32_t p) {
  Rep r;
  r.n = n;
  r.p = p;
  r.dim.assign(n, 0);
  for (int v = 0; v + 1 < n; ++v) r.map.emplace_back(0, 0, p);
  return r;
}

Rep interval_rep(int n, Interval iv, uint32_t p) {
  check_interval(n, iv);
  Rep r = zero_rep(n, p);
  for (int v = iv.lo; v <= iv.hi; ++v) r.dim[v - 1] = 1;
  for (int v = 0; v + 1 < n; ++v) {
    r.map[v] = FpMatrix(r.dim[v + 1], r.dim[v], p);
    if (r.dim[v] == 1 && r.dim[v + 1] == 1) r.map[v].set(0, 0, 1);
  }
  return r;
}

Rep direct_sum(const Rep& a, const Rep& b) {
  if (a.n != b.n || a.p != b.p) throw std::invalid_argument("direct_sum: mismatched reps");
  Rep r = zero_rep(a.n, a.p);
  for (int v = 0; v < a.n; ++v) r.dim[v] = a.dim[v] + b.dim[v];
  for (int v = 0; v + 1 < a.n; ++v) {
    FpMatrix m(r.dim[v + 1], r.dim[v], a.p);
    for (int i = 0; i < a.dim[v + 1]; ++i)
      for (int j = 0; j < a.dim[v]; ++j) m.set(i, j, a.map[v].at(i, j));
    for (int i = 0; i < b.dim[v + 1]; ++i)
      for (int j = 0; j < b.dim[v]; ++j) m.set(a.dim[v + 1] + i, a.dim[v] + j, b.map[v].at(i, j));
    r.map[v] = m;
  }
  return r;
}

Rep rep_of(int n, const ModuleObject& m, uint32_t p) {
  Rep r = zero_rep(n, p);
  for (Interval iv : m.parts) r = direct_sum(r, interval_rep(n, iv, p));
  return r;
}

std::vector<Interval> all_intervals(int n) {
  std::vector<Interval> out;
  for (int lo = 1; lo <= n; ++lo)
    for (int hi = lo; hi <= n; ++hi) out.push_back({lo, hi});
  return out;
}

Interval projective(int n, int i) { return {i, n}; }
Interval injective(int i) { return {1, i}; }
Interval simple(int i) { return {i, i}; }
bool is_projective(int n, Interval iv) { return iv.hi == n; }

int hom_dim(Interval x, Interval y) {
  return (y.lo <= x.lo && x.lo <= y.hi && y.hi <= x.hi) ? 1 : 0;
}

std::vector<RepMorphism> hom_basis(const Rep& x, const Rep& y) {
  if (x.n != y.n || x.p != y.p) throw std::invalid_argument("hom_basis: mismatched reps");
  const int n = x.n;
  const uint32_t p = x.p;
  std::vector<int> offset(n + 1, 0);
  for (int v = 0; v < n; ++v) offset[v + 1] = offset[v] + y.dim[v] * x.dim[v];
  const int unknowns = offset[n];

  int n_rows = 0;
  for (int v = 0; v + 1 < n; ++v) n_rows += y.dim[v + 1] * x.dim[v];
  FpMatrix constraints(n_rows, unknowns, p);
  int row = 0;
  for (int v = 0; v + 1 < n; ++v)
    for (int i = 0; i < y.dim[v + 1]; ++i)
      for (int j = 0; j < x.dim[v]; ++j) {
        // (Ymap_v f_v - f_{v+1} Xmap_v)(i, j) = 0
        for (int k = 0; k < y.dim[v]; ++k)
          constraints.add_at(row, offset[v] + k * x.dim[v] + j, y.map[v].at(i, k));
        for (int k = 0; k < x.dim[v + 1]; ++k)
          constraints.add_at(row, offset[v + 1] + i * x.dim[v + 1] + k,
                             fp_neg(x.map[v].at(k, j), p));
        ++row;
      }

  std::vector<RepMorphism> basis;
  for (const FpVec& sol : constraints.kernel_basis()) {
    RepMorphism f;
    for (int v = 0; v < n; ++v) {
      FpMatrix m(y.dim[v], x.dim[v], p);
      for (int r = 0; r < y.dim[v]; ++r)
        for (int c = 0; c < x.dim[v]; ++c) m.set(r, c, sol[offset[v] + r * x.dim[v] + c]);
      f.push_back(std::move(m));
    }
    basis.push_back(std::move(f));
  }
  return basis;
}

int hom_dim_oracle(const Rep& x, const Rep& y) {
  return static_cast<int>(hom_basis(x, y).size());
}

namespace {

struct Resolution {
  Rep p0, p1;        // p1 may be the zero rep
  RepMorphism incl;  // p1 -> p0
};

Resolution resolve_interval(int n, Interval x, uint32_t p) {
  Resolution res;
  res.p0 = interval_rep(n, projective(n, x.lo), p);
  res.p1 = x.hi < n ? interval_rep(n, projective(n, x.hi + 1), p) : zero_rep(n, p);
  for (int v = 0; v < n; ++v) {
    FpMatrix m(res.p0.dim[v], res.p1.dim[v], p);
    if (res.p0.dim[v] == 1 && res.p1.dim[v] == 1) m.set(0, 0, 1);
    res.incl.push_back(std::move(m));
  }
  return res;
}

RepMorphism compose_after(const RepMorphism& f, const RepMorphism& pre) {
  RepMorphism out;
  for (size_t v = 0; v < f.size(); ++v) out.push_back(f[v] * pre[v]);
  return out;
}

}  // namespace

int ext1_dim(int n, Interval x, Interval y) {
  const uint32_t p = 2;
  Resolution res = resolve_interval(n, x, p);
  Rep yrep = interval_rep(n, y, p);
  auto hom_p1 = hom_basis(res.p1, yrep);
  RowSpan image(static_cast<int>(hom_p1.empty() ? 0 : flatten(hom_p1[0]).size()), p);
  if (hom_p1.empty()) return 0;
  int rank = 0;
  for (const RepMorphism& f : hom_basis(res.p0, yrep))
    if (image.add(flatten(compose_after(f, res.incl)))) ++rank;
  return static_cast<int>(hom_p1.size()) - rank;
}

ModuleObject extension_middle(int n, Interval x, Interval y, uint32_t p) {
  if (ext1_dim(n, x, y) != 1)
    throw std::invalid_argument("extension_middle: no unique extension class");
  Resolution res = resolve_interval(n, x, p);
  Rep yrep = interval_rep(n, y, p);

  // Pick a cocycle P1 -> y whose class is nonzero in the cokernel.
  auto hom_p1 = hom_basis(res.p1, yrep);
  RowSpan image(static_cast<int>(flatten(hom_p1[0]).size()), p);
  for (const RepMorphism& f : hom_basis(res.p0, yrep)) image.add(flatten(compose_after(f, res.incl)));
  const RepMorphism* cocycle = nullptr;
  for (const RepMorphism& g : hom_p1)
    if (!image.contains(flatten(g))) {
      cocycle = &g;
      break;
    }
  if (!cocycle) throw std::logic_error("extension_middle: cocycle not found");

  // Middle term = cokernel of (incl, -cocycle): P1 -> P0 + y.
  Rep total = direct_sum(res.p0, yrep);
  std::vector<std::vector<FpVec>> gens(n);
  for (int v = 0; v < n; ++v)
    for (int j = 0; j < res.p1.dim[v]; ++j) {
      FpVec g(total.dim[v], 0);
      for (int i = 0; i < res.p0.dim[v]; ++i) g[i] = res.incl[v].at(i, j);
      for (int i = 0; i < yrep.dim[v]; ++i)
        g[res.p0.dim[v] + i] = fp_neg((*cocycle)[v].at(i, j), p);
      gens[v].push_back(std::move(g));
    }
  ModuleObject mid = decompose(quotient_by_subspace(total, gens));
  if (mid.total_length() != x.length() + y.length())
    throw std::logic_error("extension_middle: dimension mismatch");
  return mid;
}

ModuleObject decompose(const Rep& r) {
  const int n = r.n;
  // rank_to[a][b] = rank of the composite V_a -> V_b, 1-based, a <= b.
  std::vector<std::vector<int>> rank_to(n + 1, std::vector<int>(n + 1, 0));
  for (int a = 1; a <= n; ++a) {
    rank_to[a][a] = r.dim[a - 1];
    FpMatrix composite = FpMatrix::identity(r.dim[a - 1], r.p);
    for (int b = a + 1; b <= n; ++b) {
      composite = r.map[b - 2] * composite;
      rank_to[a][b] = composite.rank();
    }
  }
  auto rk = [&](int a, int b) { return (a < 1 || b > n) ? 0 : rank_to[a][b]; };

  ModuleObject out;
  int found = 0;
  for (int a = 1; a <= n; ++a)
    for (int b = a; b <= n; ++b) {
      int mult = rk(a, b) - rk(a - 1, b) - rk(a, b + 1) + rk(a - 1, b + 1);
      if (mult < 0) throw std::logic_error("decompose: negative multiplicity");
      for (int i = 0; i < mult; ++i) out.add({a, b});
      found += mult * (b - a + 1);
    }
  int total = 0;
  for (int d : r.dim) total += d;
  if (found != total) throw std::logic_error("decompose: dimension not preserved");
  return out;
}

std::optional<Interval> tau(int n, Interval x) {
  check_interval(n, x);
  if (is_projective(n, x)) return std::nullopt;

  static std::mutex mu;
  static std::map<std::pair<int, Interval>, Interval> table;
  std::scoped_lock lock(mu);
  auto it = table.find({n, x});
  if (it != table.end()) return it->second;

  auto probes = all_intervals(n);
  std::vector<int> ext(probes.size());
  for (size_t i = 0; i < probes.size(); ++i) ext[i] = ext1_dim(n, x, probes[i]);
  std::optional<Interval> match;
  for (Interval t : probes) {
    bool ok = true;
    for (size_t i = 0; i < probes.size(); ++i)
      if (ext[i] != hom_dim(probes[i], t)) {
        ok = false;
        break;
      }
    if (!ok) continue;
    if (match) throw std::logic_error("tau: duality constraints do not pin a unique interval");
    match = t;
  }
  if (!match) throw std::logic_error("tau: no interval satisfies the duality constraints");
  table[{n, x}] = *match;
  return match;
}

Rep restrict_to_subspace(const Rep& r, const std::vector<std::vector<FpVec>>& gens) {
  const int n = r.n;
  std::vector<FpMatrix> basis(n);
  Rep sub = zero_rep(n, r.p);
  for (int v = 0; v < n; ++v) {
    basis[v] = span_rows(gens[v], r.dim[v], r.p);
    sub.dim[v] = basis[v].rows();
  }
  for (int v = 0; v + 1 < n; ++v) {
    FpMatrix m(sub.dim[v + 1], sub.dim[v], r.p);
    for (int j = 0; j < sub.dim[v]; ++j) {
      FpVec bj(r.dim[v]);
      for (int c = 0; c < r.dim[v]; ++c) bj[c] = basis[v].at(j, c);
      FpVec coords = coords_in_rows(basis[v + 1], r.map[v].apply(bj));
      for (int i = 0; i < sub.dim[v + 1]; ++i) m.set(i, j, coords[i]);
    }
    sub.map[v] = m;
  }
  return sub;
}

Rep quotient_by_subspace(const Rep& r, const std::vector<std::vector<FpVec>>& gens) {
  const int n = r.n;
  struct VertexData {
    FpMatrix echelon;            // rref rows spanning the subspace
    std::vector<int> pivots;     // pivot columns of the subspace
    std::vector<int> rep_cols;   // non-pivot columns = quotient coordinates
  };
  std::vector<VertexData> vd(n);
  Rep quo = zero_rep(n, r.p);
  for (int v = 0; v < n; ++v) {
    FpMatrix full = gens[v].empty() ? FpMatrix(0, r.dim[v], r.p)
                                    : FpMatrix::from_rows(gens[v], r.dim[v], r.p);
    FpMatrix rr = full.rref(&vd[v].pivots);
    vd[v].echelon = rr.submatrix(0, 0, static_cast<int>(vd[v].pivots.size()), r.dim[v]);
    std::vector<bool> is_pivot(r.dim[v], false);
    for (int c : vd[v].pivots) is_pivot[c] = true;
    for (int c = 0; c < r.dim[v]; ++c)
      if (!is_pivot[c]) vd[v].rep_cols.push_back(c);
    quo.dim[v] = static_cast<int>(vd[v].rep_cols.size());
  }
  auto project = [&](int v, FpVec u) {
    for (int i = 0; i < vd[v].echelon.rows(); ++i) {
      uint32_t f = u[vd[v].pivots[i]];
      if (f == 0) continue;
      for (int c = 0; c < r.dim[v]; ++c)
        u[c] = fp_sub(u[c], fp_mul(f, vd[v].echelon.at(i, c), r.p), r.p);
    }
    FpVec out(quo.dim[v]);
    for (int i = 0; i < quo.dim[v]; ++i) out[i] = u[vd[v].rep_cols[i]];
    return out;
  };
  for (int v = 0; v + 1 < n; ++v) {
    FpMatrix m(quo.dim[v + 1], quo.dim[v], r.p);
    for (int j = 0; j < quo.dim[v]; ++j) {
      FpVec e(r.dim[v], 0);
      e[vd[v].rep_cols[j]] = 1;
      FpVec img = project(v + 1, r.map[v].apply(e));
      for (int i = 0; i < quo.dim[v + 1]; ++i) m.set(i, j, img[i]);
    }
    quo.map[v] = m;
  }
  return quo;
}

std::vector<std::pair<Interval, RepMorphism>> split_embeddings(const Rep& r) {
  const int n = r.n;
  int total = 0;
  for (int d : r.dim) total += d;
  if (total == 0) return {};

  const Interval iv = decompose(r).parts.front();
  const Rep ivr = interval_rep(n, iv, r.p);
  const auto fb = hom_basis(ivr, r);
  const auto gb = hom_basis(r, ivr);
  if (fb.size() > 20 || (r.p > 2 && fb.size() > 12))
    throw std::logic_error("split_embeddings: hom space too large to scan");
  uint64_t count = 1;
  for (size_t k = 0; k < fb.size(); ++k) count *= r.p;

  RepMorphism idiv;
  for (int v = 0; v < n; ++v) idiv.push_back(FpMatrix::identity(ivr.dim[v], r.p));
  const FpVec id_flat = flatten(idiv);

  RepMorphism f, g;
  bool found = false;
  for (uint64_t code = 1; code < count && !found; ++code) {
    RepMorphism cand;
    for (int v = 0; v < n; ++v) cand.push_back(FpMatrix(r.dim[v], ivr.dim[v], r.p));
    uint64_t digits = code;
    for (size_t k = 0; k < fb.size(); ++k, digits /= r.p) {
      uint32_t coef = static_cast<uint32_t>(digits % r.p);
      if (coef == 0) continue;
      for (int v = 0; v < n; ++v) cand[v] = cand[v] + fb[k][v].scaled(coef);
    }
    // A retraction for cand is a hom-space combination solving g . cand = id.
    FpMatrix sys(static_cast<int>(id_flat.size()), static_cast<int>(gb.size()), r.p);
    for (size_t k = 0; k < gb.size(); ++k) {
      RepMorphism comp;
      for (int v = 0; v < n; ++v) comp.push_back(gb[k][v] * cand[v]);
      FpVec col = flatten(comp);
      for (size_t i = 0; i < col.size(); ++i) sys.set(static_cast<int>(i), static_cast<int>(k), col[i]);
    }
    auto mu = sys.solve(id_flat);
    if (!mu) continue;
    f = cand;
    for (int v = 0; v < n; ++v) g.push_back(FpMatrix(ivr.dim[v], r.dim[v], r.p));
    for (size_t k = 0; k < gb.size(); ++k) {
      if ((*mu)[k] == 0) continue;
      for (int v = 0; v < n; ++v) g[v] = g[v] + gb[k][v].scaled((*mu)[k]);
    }
    found = true;
  }
  if (!found) throw std::logic_error("split_embeddings: no split monomorphism found");

  // The complement is the kernel of the idempotent f . g; its echelon basis
  // doubles as the inclusion matrix back into r.
  std::vector<std::vector<FpVec>> kernel_rows(n);
  std::vector<FpMatrix> bases(n);
  for (int v = 0; v < n; ++v) {
    FpMatrix e = f[v] * g[v];
    bases[v] = span_rows(e.kernel_basis(), r.dim[v], r.p);
    for (int i = 0; i < bases[v].rows(); ++i) {
      FpVec row(r.dim[v]);
      for (int c = 0; c < r.dim[v]; ++c) row[c] = bases[v].at(i, c);
      kernel_rows[v].push_back(std::move(row));
    }
  }
  Rep comp = restrict_to_subspace(r, kernel_rows);

  std::vector<std::pair<Interval, RepMorphism>> out;
  out.emplace_back(iv, f);
  for (auto& [iv2, emb] : split_embeddings(comp)) {
    RepMorphism lifted;
    for (int v = 0; v < n; ++v) lifted.push_back(bases[v].transpose() * emb[v]);
    out.emplace_back(iv2, std::move(lifted));
  }
  return out;
}

Rep morphism_kernel(const Rep& x, const Rep& y, const RepMorphism& f) {
  std::vector<std::vector<FpVec>> gens(x.n);
  for (int v = 0; v < x.n; ++v) gens[v] = f[v].kernel_basis();
  return restrict_to_subspace(x, gens);
}

Rep morphism_cokernel(const Rep& x, const Rep& y, const RepMorphism& f) {
  std::vector<std::vector<FpVec>> gens(y.n);
  for (int v = 0; v < y.n; ++v)
    for (int j = 0; j < x.dim[v]; ++j) {
      FpVec col(y.dim[v]);
      for (int i = 0; i < y.dim[v]; ++i) col[i] = f[v].at(i, j);
      gens[v].push_back(std::move(col));
    }
  return quotient_by_subspace(y, gens);
}

}  // namespace negcat
