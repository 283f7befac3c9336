#include "negcat/derived.hpp"

#include <algorithm>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <tuple>
#include <utility>

namespace negcat {

namespace {

const std::vector<int> kNoGens;

// A component map P(src) -> P(dst) exists iff dst <= src.
bool legal_entry(int src_gen, int dst_gen) { return dst_gen <= src_gen; }

const FpMatrix* diff_from(const ProjComplex& c, int deg) {
  int k = deg - c.lo;
  if (k < 0 || k + 1 >= static_cast<int>(c.gens.size())) return nullptr;
  return &c.diff[k];
}

FpMatrix diff_or_zero(const ProjComplex& c, int deg) {
  if (const FpMatrix* m = diff_from(c, deg)) return *m;
  return FpMatrix(c.width(deg + 1), c.width(deg), c.p);
}

// Index of every legal coefficient slot of a map X^d -> Y^{d+off}; chain maps
// use off = 0, homotopies off = -1. Illegal slots hold no variable because the
// corresponding hom space between projectives is zero.
struct VarLayout {
  struct Slot {
    int deg, row, col;
  };
  std::vector<Slot> vars;
  std::map<int, std::vector<std::vector<int>>> idx;

  int size() const { return static_cast<int>(vars.size()); }
  int find(int deg, int row, int col) const {
    auto it = idx.find(deg);
    if (it == idx.end()) return -1;
    return it->second[row][col];
  }
};

VarLayout make_layout(const ProjComplex& x, const ProjComplex& y, int off) {
  VarLayout L;
  for (int d = x.lo; d <= x.hi(); ++d) {
    const auto& xg = x.at(d);
    const auto& yg = y.at(d + off);
    if (xg.empty() || yg.empty()) continue;
    auto& m = L.idx[d];
    m.assign(yg.size(), std::vector<int>(xg.size(), -1));
    for (size_t j = 0; j < yg.size(); ++j)
      for (size_t i = 0; i < xg.size(); ++i)
        if (legal_entry(xg[i], yg[j])) {
          m[j][i] = L.size();
          L.vars.push_back({d, static_cast<int>(j), static_cast<int>(i)});
        }
  }
  return L;
}

ChainMap map_from_vec(const VarLayout& L, const ProjComplex& x, const ProjComplex& y,
                      const FpVec& v) {
  ChainMap f;
  for (const auto& [d, m] : L.idx) {
    FpMatrix b(static_cast<int>(m.size()), static_cast<int>(m[0].size()), x.p);
    bool nonzero = false;
    for (size_t j = 0; j < m.size(); ++j)
      for (size_t i = 0; i < m[j].size(); ++i)
        if (m[j][i] >= 0 && v[m[j][i]] != 0) {
          b.set(static_cast<int>(j), static_cast<int>(i), v[m[j][i]]);
          nonzero = true;
        }
    if (nonzero) f.blocks.emplace(d, std::move(b));
  }
  return f;
}

FpVec vec_from_map(const VarLayout& L, const ProjComplex& x, const ProjComplex& y,
                   const ChainMap& f) {
  FpVec v(L.size(), 0);
  for (const auto& [d, b] : f.blocks) {
    if (b.rows() == 0 && b.cols() == 0) continue;
    if (b.rows() != y.width(d) || b.cols() != x.width(d))
      throw std::invalid_argument("chain map block has the wrong shape");
    for (int j = 0; j < b.rows(); ++j)
      for (int i = 0; i < b.cols(); ++i) {
        uint32_t e = b.at(j, i);
        if (e == 0) continue;
        int var = L.find(d, j, i);
        if (var < 0) throw std::invalid_argument("chain map entry outside the legal layout");
        v[var] = e;
      }
  }
  return v;
}

// Rows of the linear system d_Y f - f d_X = 0 over the layout variables.
FpMatrix chain_condition(const ProjComplex& x, const ProjComplex& y, const VarLayout& L) {
  const uint32_t p = x.p;
  std::vector<FpVec> rows;
  for (int d = x.lo; d <= x.hi(); ++d) {
    const auto& xg = x.at(d);
    const auto& yg1 = y.at(d + 1);
    if (xg.empty() || yg1.empty()) continue;
    const FpMatrix* dx = diff_from(x, d);
    const FpMatrix* dy = diff_from(y, d);
    for (size_t j = 0; j < yg1.size(); ++j)
      for (size_t i = 0; i < xg.size(); ++i) {
        FpVec row(L.size(), 0);
        bool any = false;
        if (dy)
          for (int k = 0; k < dy->cols(); ++k) {
            uint32_t c = dy->at(static_cast<int>(j), k);
            if (c == 0) continue;
            int var = L.find(d, k, static_cast<int>(i));
            if (var < 0) continue;
            row[var] = fp_add(row[var], c, p);
            any = true;
          }
        if (dx)
          for (int m = 0; m < dx->rows(); ++m) {
            uint32_t c = dx->at(m, static_cast<int>(i));
            if (c == 0) continue;
            int var = L.find(d + 1, static_cast<int>(j), m);
            if (var < 0) continue;
            row[var] = fp_sub(row[var], c, p);
            any = true;
          }
        if (any) rows.push_back(std::move(row));
      }
  }
  return FpMatrix::from_rows(rows, L.size(), p);
}

// Flattened boundaries d_Y h + h d_X of the single-entry homotopies. These
// span the null-homotopic chain maps inside the layout coordinates.
std::vector<FpVec> homotopy_boundaries(const ProjComplex& x, const ProjComplex& y,
                                       const VarLayout& fL) {
  const uint32_t p = x.p;
  VarLayout hL = make_layout(x, y, -1);
  std::vector<FpVec> rows;
  for (const auto& hv : hL.vars) {
    const int d = hv.deg;
    FpVec row(fL.size(), 0);
    bool any = false;
    if (const FpMatrix* dy = diff_from(y, d - 1))
      for (int r = 0; r < dy->rows(); ++r) {
        uint32_t c = dy->at(r, hv.row);
        if (c == 0) continue;
        int var = fL.find(d, r, hv.col);
        if (var < 0) throw std::logic_error("homotopy boundary left the legal layout");
        row[var] = fp_add(row[var], c, p);
        any = true;
      }
    if (const FpMatrix* dx = diff_from(x, d - 1))
      for (int c = 0; c < dx->cols(); ++c) {
        uint32_t e = dx->at(hv.col, c);
        if (e == 0) continue;
        int var = fL.find(d - 1, hv.row, c);
        if (var < 0) throw std::logic_error("homotopy boundary left the legal layout");
        row[var] = fp_add(row[var], e, p);
        any = true;
      }
    if (any) rows.push_back(std::move(row));
  }
  return rows;
}

ChainMap shift_chain(const ChainMap& f, int delta) {
  ChainMap out;
  for (const auto& [d, b] : f.blocks) out.blocks.emplace(d + delta, b);
  return out;
}

int big_position(const CanonLoc::Part& slot, int deg) {
  if (deg == slot.deg0) return slot.pos0;
  if (slot.has_p1 && deg == slot.deg0 - 1) return slot.pos1;
  return -1;
}

FpMatrix& ensure_block(ChainMap& f, int deg, int rows, int cols, uint32_t p) {
  auto it = f.blocks.find(deg);
  if (it == f.blocks.end()) it = f.blocks.emplace(deg, FpMatrix(rows, cols, p)).first;
  return it->second;
}

// The canonical generator of a one-dimensional pair space, as a chain map
// between the single-part resolutions. Memoized up to common suspension.
ChainMap pair_generator(int n, ShiftedInterval x, ShiftedInterval y, uint32_t p) {
  const int base = x.shift;
  x.shift = 0;
  y.shift -= base;
  using Key = std::tuple<int, uint32_t, Interval, int, Interval>;
  static std::map<Key, ChainMap> memo;
  static std::mutex mx;
  Key key{n, p, x.iv, y.shift, y.iv};
  {
    std::lock_guard<std::mutex> lock(mx);
    auto it = memo.find(key);
    if (it != memo.end()) return shift_chain(it->second, -base);
  }
  ProjComplex rx = resolve(n, DerivedObject::of(x), p);
  ProjComplex ry = resolve(n, DerivedObject::of(y), p);
  auto basis = hom_basis_D(rx, ry);
  if (basis.size() != 1) throw std::logic_error("pair space is not one-dimensional");
  std::lock_guard<std::mutex> lock(mx);
  auto [it, inserted] = memo.emplace(key, basis[0]);
  return shift_chain(it->second, -base);
}

// Coefficient of f against the generator of a one-dimensional pair, solved
// modulo homotopy boundaries.
uint32_t pair_class(const ProjComplex& px, const ProjComplex& py, const ChainMap& f,
                    const ChainMap& gen) {
  VarLayout L = make_layout(px, py, 0);
  FpVec target = vec_from_map(L, px, py, f);
  FpVec gv = vec_from_map(L, px, py, gen);
  auto boundaries = homotopy_boundaries(px, py, L);
  FpMatrix sys(L.size(), 1 + static_cast<int>(boundaries.size()), px.p);
  for (int i = 0; i < L.size(); ++i) sys.set(i, 0, gv[i]);
  for (size_t j = 0; j < boundaries.size(); ++j)
    for (int i = 0; i < L.size(); ++i) sys.set(i, 1 + static_cast<int>(j), boundaries[j][i]);
  auto sol = sys.solve(target);
  if (!sol) throw std::logic_error("chain map does not lie in the pair span");
  return (*sol)[0];
}

uint32_t structure_constant(int n, uint32_t p, ShiftedInterval a, ShiftedInterval b,
                            ShiftedInterval c) {
  const int base = a.shift;
  a.shift = 0;
  b.shift -= base;
  c.shift -= base;
  if (hom_dim_D_pair(a, b) == 0 || hom_dim_D_pair(b, c) == 0 || hom_dim_D_pair(a, c) == 0)
    return 0;
  using Key = std::tuple<int, uint32_t, Interval, int, Interval, int, Interval>;
  static std::map<Key, uint32_t> memo;
  static std::mutex mx;
  Key key{n, p, a.iv, b.shift, b.iv, c.shift, c.iv};
  {
    std::lock_guard<std::mutex> lock(mx);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
  }
  ProjComplex ra = resolve(n, DerivedObject::of(a), p);
  ProjComplex rb = resolve(n, DerivedObject::of(b), p);
  ProjComplex rc = resolve(n, DerivedObject::of(c), p);
  ChainMap comp = compose_chain(ra, rb, rc, pair_generator(n, b, c, p), pair_generator(n, a, b, p));
  uint32_t val = pair_class(ra, rc, comp, pair_generator(n, a, c, p));
  std::lock_guard<std::mutex> lock(mx);
  memo.emplace(key, val);
  return val;
}

// --- fiber coordinates ---------------------------------------------------
//
// Hom(P(v'), -) identifies a sum of projectives with its dimension vector:
// the fiber of gens at vertex v consists of the components generated at or
// before v, and the structure map between consecutive fibers is the evident
// inclusion. All cohomology below is computed in these coordinates.

std::vector<int> fiber_of(const std::vector<int>& gens, int v) {
  std::vector<int> idx;
  for (size_t i = 0; i < gens.size(); ++i)
    if (gens[i] <= v) idx.push_back(static_cast<int>(i));
  return idx;
}

FpMatrix fiber_block(const std::vector<int>& src, const std::vector<int>& dst,
                     const FpMatrix* block, int v, uint32_t p) {
  auto si = fiber_of(src, v);
  auto di = fiber_of(dst, v);
  FpMatrix m(static_cast<int>(di.size()), static_cast<int>(si.size()), p);
  if (block)
    for (size_t j = 0; j < di.size(); ++j)
      for (size_t i = 0; i < si.size(); ++i)
        m.set(static_cast<int>(j), static_cast<int>(i), block->at(di[j], si[i]));
  return m;
}

FpMatrix fiber_step(const std::vector<int>& gens, int v, uint32_t p) {
  auto a = fiber_of(gens, v);
  auto b = fiber_of(gens, v + 1);
  FpMatrix m(static_cast<int>(b.size()), static_cast<int>(a.size()), p);
  for (size_t j = 0; j < b.size(); ++j)
    for (size_t i = 0; i < a.size(); ++i)
      if (b[j] == a[i]) m.set(static_cast<int>(j), static_cast<int>(i), 1);
  return m;
}

std::vector<int> leading_cols(const FpMatrix& echelon) {
  std::vector<int> out;
  for (int r = 0; r < echelon.rows(); ++r) {
    int c = 0;
    while (c < echelon.cols() && echelon.at(r, c) == 0) ++c;
    out.push_back(c);
  }
  return out;
}

// Cohomology of c at one degree: vertexwise kernels of the outgoing fiber
// differential, modulo the image of the incoming one, packaged as a quiver
// representation plus the coordinate data needed to lift classes back.
struct DegreeCohom {
  std::vector<FpMatrix> kb;            // echelon bases of ker, rows in fiber coords
  std::vector<FpMatrix> kstep;         // induced maps between consecutive kernels
  std::vector<FpMatrix> iech;          // image echelon rows, in kernel coords
  std::vector<std::vector<int>> ipiv;  // their pivot columns
  std::vector<std::vector<int>> irep;  // representative kernel coords of the quotient
  Rep h;
};

FpVec project_to_h(const DegreeCohom& coh, int v0, FpVec u) {
  const uint32_t p = coh.h.p;
  const FpMatrix& e = coh.iech[v0];
  const auto& piv = coh.ipiv[v0];
  for (int r = 0; r < e.rows(); ++r) {
    uint32_t c = u[piv[r]];
    if (c == 0) continue;
    for (int j = 0; j < e.cols(); ++j) u[j] = fp_sub(u[j], fp_mul(c, e.at(r, j), p), p);
  }
  FpVec out(coh.irep[v0].size());
  for (size_t i = 0; i < coh.irep[v0].size(); ++i) out[i] = u[coh.irep[v0][i]];
  return out;
}

DegreeCohom cohom_at(const ProjComplex& c, int d) {
  const int n = c.n;
  const uint32_t p = c.p;
  DegreeCohom out;
  out.kb.resize(n);
  out.kstep.resize(n > 0 ? n - 1 : 0);
  out.iech.resize(n);
  out.ipiv.resize(n);
  out.irep.resize(n);
  out.h.n = n;
  out.h.p = p;
  out.h.dim.assign(n, 0);
  out.h.map.assign(n > 0 ? n - 1 : 0, FpMatrix());

  const auto& g = c.at(d);
  for (int v = 1; v <= n; ++v) {
    FpMatrix dd = fiber_block(g, c.at(d + 1), diff_from(c, d), v, p);
    out.kb[v - 1] = span_rows(dd.kernel_basis(), dd.cols(), p);
  }
  for (int v = 1; v < n; ++v) {
    FpMatrix st = fiber_step(g, v, p);
    FpMatrix m(out.kb[v].rows(), out.kb[v - 1].rows(), p);
    for (int j = 0; j < out.kb[v - 1].rows(); ++j) {
      FpVec row(out.kb[v - 1].cols());
      for (int cc = 0; cc < out.kb[v - 1].cols(); ++cc) row[cc] = out.kb[v - 1].at(j, cc);
      FpVec coords = coords_in_rows(out.kb[v], st.apply(row));
      for (int i = 0; i < m.rows(); ++i) m.set(i, j, coords[i]);
    }
    out.kstep[v - 1] = m;
  }
  for (int v = 1; v <= n; ++v) {
    FpMatrix din = fiber_block(c.at(d - 1), g, diff_from(c, d - 1), v, p);
    std::vector<FpVec> cols;
    for (int j = 0; j < din.cols(); ++j) {
      FpVec col(din.rows());
      for (int i = 0; i < din.rows(); ++i) col[i] = din.at(i, j);
      cols.push_back(coords_in_rows(out.kb[v - 1], col));
    }
    out.iech[v - 1] = span_rows(cols, out.kb[v - 1].rows(), p);
    out.ipiv[v - 1] = leading_cols(out.iech[v - 1]);
    for (int j = 0; j < out.kb[v - 1].rows(); ++j)
      if (std::find(out.ipiv[v - 1].begin(), out.ipiv[v - 1].end(), j) == out.ipiv[v - 1].end())
        out.irep[v - 1].push_back(j);
    out.h.dim[v - 1] = static_cast<int>(out.irep[v - 1].size());
  }
  for (int v = 0; v + 1 < n; ++v) {
    FpMatrix m(out.h.dim[v + 1], out.h.dim[v], p);
    for (int j = 0; j < out.h.dim[v]; ++j) {
      FpVec e(out.kb[v].rows(), 0);
      e[out.irep[v][j]] = 1;
      FpVec hc = project_to_h(out, v + 1, out.kstep[v].apply(e));
      for (int i = 0; i < m.rows(); ++i) m.set(i, j, hc[i]);
    }
    out.h.map[v] = m;
  }
  return out;
}

ProjComplex cone_complex(const ProjComplex& rx, const ProjComplex& ry, const ChainMap& f) {
  if (rx.n != ry.n || rx.p != ry.p) throw std::invalid_argument("cone over mismatched complexes");
  ProjComplex c;
  c.n = rx.n;
  c.p = rx.p;
  int lo = std::numeric_limits<int>::max();
  int hi = std::numeric_limits<int>::min();
  if (!rx.gens.empty()) {
    lo = std::min(lo, rx.lo - 1);
    hi = std::max(hi, rx.hi() - 1);
  }
  if (!ry.gens.empty()) {
    lo = std::min(lo, ry.lo);
    hi = std::max(hi, ry.hi());
  }
  if (lo > hi) return c;
  c.lo = lo;
  for (int d = lo; d <= hi; ++d) {
    std::vector<int> g = rx.at(d + 1);
    const auto& yg = ry.at(d);
    g.insert(g.end(), yg.begin(), yg.end());
    c.gens.push_back(std::move(g));
  }
  for (int d = lo; d < hi; ++d) {
    FpMatrix m(c.width(d + 1), c.width(d), c.p);
    FpMatrix dx = diff_or_zero(rx, d + 1);
    FpMatrix dy = diff_or_zero(ry, d);
    FpMatrix fb = chain_block(f, d + 1, rx, ry);
    const int rx_off = rx.width(d + 2);
    for (int i = 0; i < dx.rows(); ++i)
      for (int j = 0; j < dx.cols(); ++j) m.set(i, j, fp_neg(dx.at(i, j), c.p));
    for (int i = 0; i < fb.rows(); ++i)
      for (int j = 0; j < fb.cols(); ++j) m.set(rx_off + i, j, fb.at(i, j));
    for (int i = 0; i < dy.rows(); ++i)
      for (int j = 0; j < dy.cols(); ++j) m.set(rx_off + i, rx.width(d + 1) + j, dy.at(i, j));
    c.diff.push_back(std::move(m));
  }
  return c;
}

}  // namespace

// --- objects -------------------------------------------------------------

std::string to_string(ShiftedInterval x) {
  std::string iv = to_string(x.iv);
  if (x.shift == 0) return iv;
  if (x.shift == 1) return "S" + iv;
  return "S^" + std::to_string(x.shift) + iv;
}

std::string to_string(const DerivedObject& x) {
  if (x.empty()) return "0";
  std::string out;
  for (size_t i = 0; i < x.parts.size(); ++i) {
    if (i) out += " + ";
    out += to_string(x.parts[i]);
  }
  return out;
}

void DerivedObject::add(ShiftedInterval x) {
  parts.insert(std::upper_bound(parts.begin(), parts.end(), x), x);
}

void DerivedObject::add(const DerivedObject& other) {
  for (ShiftedInterval x : other.parts) add(x);
}

DerivedObject DerivedObject::of_module(const ModuleObject& m, int shift) {
  DerivedObject out;
  for (Interval iv : m.parts) out.add({shift, iv});
  return out;
}

ShiftedInterval shift_of(ShiftedInterval x, int k) { return {x.shift + k, x.iv}; }

// Keeps the part order of the input: a uniform shift never reorders a sorted
// object, and callers that work with deliberately ordered part lists rely on
// positions surviving.
DerivedObject shift_of(const DerivedObject& x, int k) {
  DerivedObject out;
  for (ShiftedInterval part : x.parts) out.parts.push_back(shift_of(part, k));
  return out;
}

ShiftedInterval tau_D(int n, ShiftedInterval x) {
  if (x.iv.hi < n) return {x.shift, {x.iv.lo + 1, x.iv.hi + 1}};
  return {x.shift - 1, {1, x.iv.lo}};
}

ShiftedInterval tau_D_inv(int n, ShiftedInterval x) {
  if (x.iv.lo > 1) return {x.shift, {x.iv.lo - 1, x.iv.hi - 1}};
  return {x.shift + 1, {x.iv.hi, n}};
}

DerivedObject tau_D(int n, const DerivedObject& x) {
  DerivedObject out;
  for (ShiftedInterval part : x.parts) out.add(tau_D(n, part));
  return out;
}

DerivedObject tau_D_inv(int n, const DerivedObject& x) {
  DerivedObject out;
  for (ShiftedInterval part : x.parts) out.add(tau_D_inv(n, part));
  return out;
}

ShiftedInterval nu_D(int n, ShiftedInterval x) { return shift_of(tau_D(n, x), 1); }

int ext1_closed(Interval x, Interval y) {
  return (x.lo < y.lo && y.lo <= x.hi + 1 && x.hi + 1 <= y.hi) ? 1 : 0;
}

int hom_dim_D_pair(ShiftedInterval x, ShiftedInterval y) {
  int dk = y.shift - x.shift;
  if (dk == 0) return hom_dim(x.iv, y.iv);
  if (dk == 1) return ext1_closed(x.iv, y.iv);
  return 0;
}

int hom_dim_D_obj(const DerivedObject& x, const DerivedObject& y) {
  int total = 0;
  for (ShiftedInterval a : x.parts)
    for (ShiftedInterval b : y.parts) total += hom_dim_D_pair(a, b);
  return total;
}

// --- complexes and chain maps --------------------------------------------

const std::vector<int>& ProjComplex::at(int deg) const {
  int k = deg - lo;
  if (k < 0 || k >= static_cast<int>(gens.size())) return kNoGens;
  return gens[k];
}

FpMatrix chain_block(const ChainMap& f, int deg, const ProjComplex& src, const ProjComplex& dst) {
  auto it = f.blocks.find(deg);
  if (it != f.blocks.end()) return it->second;
  return FpMatrix(dst.width(deg), src.width(deg), src.p);
}

ProjComplex resolve(int n, const DerivedObject& x, uint32_t p, CanonLoc* loc) {
  if (p != 2) throw std::invalid_argument("chain level supports p = 2 only");
  ProjComplex c;
  c.n = n;
  c.p = p;
  CanonLoc L;
  L.parts.resize(x.parts.size());
  if (x.empty()) {
    if (loc) *loc = L;
    return c;
  }
  int dmin = std::numeric_limits<int>::max();
  int dmax = std::numeric_limits<int>::min();
  for (const ShiftedInterval& part : x.parts) {
    if (part.iv.lo < 1 || part.iv.lo > part.iv.hi || part.iv.hi > n)
      throw std::invalid_argument("interval out of range: " + to_string(part.iv));
    int d0 = -part.shift;
    dmin = std::min(dmin, part.iv.hi < n ? d0 - 1 : d0);
    dmax = std::max(dmax, d0);
  }
  c.lo = dmin;
  c.gens.assign(dmax - dmin + 1, {});
  for (size_t t = 0; t < x.parts.size(); ++t) {
    const ShiftedInterval& part = x.parts[t];
    int d0 = -part.shift;
    auto& slot = L.parts[t];
    slot.deg0 = d0;
    slot.pos0 = static_cast<int>(c.gens[d0 - dmin].size());
    c.gens[d0 - dmin].push_back(part.iv.lo);
    if (part.iv.hi < n) {
      slot.has_p1 = true;
      slot.pos1 = static_cast<int>(c.gens[d0 - 1 - dmin].size());
      c.gens[d0 - 1 - dmin].push_back(part.iv.hi + 1);
    }
  }
  for (size_t k = 0; k + 1 < c.gens.size(); ++k)
    c.diff.push_back(FpMatrix(static_cast<int>(c.gens[k + 1].size()),
                              static_cast<int>(c.gens[k].size()), p));
  for (const auto& slot : L.parts)
    if (slot.has_p1) c.diff[slot.deg0 - 1 - dmin].set(slot.pos0, slot.pos1, 1);
  if (loc) *loc = L;
  return c;
}

bool is_chain_map(const ProjComplex& x, const ProjComplex& y, const ChainMap& f) {
  for (const auto& [d, b] : f.blocks) {
    if (b.rows() == 0 && b.cols() == 0) continue;
    if (b.rows() != y.width(d) || b.cols() != x.width(d)) return false;
    for (int j = 0; j < b.rows(); ++j)
      for (int i = 0; i < b.cols(); ++i)
        if (b.at(j, i) != 0 && !legal_entry(x.at(d)[i], y.at(d)[j])) return false;
  }
  int lo = std::min(x.lo, y.lo) - 1;
  int hi = std::max(x.hi(), y.hi());
  for (int d = lo; d <= hi; ++d) {
    FpMatrix lhs = diff_or_zero(y, d) * chain_block(f, d, x, y);
    FpMatrix rhs = chain_block(f, d + 1, x, y) * diff_or_zero(x, d);
    if (!(lhs == rhs)) return false;
  }
  return true;
}

ChainMap compose_chain(const ProjComplex& x, const ProjComplex& y, const ProjComplex& z,
                       const ChainMap& g, const ChainMap& f) {
  ChainMap out;
  for (int d = x.lo; d <= x.hi(); ++d) {
    if (x.width(d) == 0 || z.width(d) == 0) continue;
    FpMatrix b = chain_block(g, d, y, z) * chain_block(f, d, x, y);
    if (!b.is_zero()) out.blocks.emplace(d, std::move(b));
  }
  return out;
}

ChainMap identity_chain(const ProjComplex& x) {
  ChainMap out;
  for (int d = x.lo; d <= x.hi(); ++d)
    if (x.width(d) > 0) out.blocks.emplace(d, FpMatrix::identity(x.width(d), x.p));
  return out;
}

std::vector<ChainMap> hom_basis_D(const ProjComplex& x, const ProjComplex& y) {
  VarLayout L = make_layout(x, y, 0);
  FpMatrix cond = chain_condition(x, y, L);
  RowSpan span(L.size(), x.p);
  for (FpVec& b : homotopy_boundaries(x, y, L)) span.add(std::move(b));
  std::vector<ChainMap> out;
  for (const FpVec& k : cond.kernel_basis())
    if (span.add(k)) out.push_back(map_from_vec(L, x, y, k));
  return out;
}

int hom_dim_D(const ProjComplex& x, const ProjComplex& y) {
  return static_cast<int>(hom_basis_D(x, y).size());
}

bool homotopic(const ProjComplex& x, const ProjComplex& y, const ChainMap& f, const ChainMap& g) {
  VarLayout L = make_layout(x, y, 0);
  RowSpan span(L.size(), x.p);
  for (FpVec& b : homotopy_boundaries(x, y, L)) span.add(std::move(b));
  FpVec diff = fpvec_sub(vec_from_map(L, x, y, f), vec_from_map(L, x, y, g), x.p);
  return span.contains(diff);
}

DerivedObject decompose_complex(const ProjComplex& c) {
  DerivedObject out;
  for (int d = c.lo; d <= c.hi(); ++d) {
    if (c.width(d) == 0) continue;
    for (Interval iv : decompose(cohom_at(c, d).h).parts) out.add({-d, iv});
  }
  return out;
}

Comparison compare_to_canonical(const ProjComplex& c) {
  const int n = c.n;
  const uint32_t p = c.p;
  struct Seed {
    int deg;
    Interval iv;
    FpVec col0;
    FpVec col1;
    bool has1 = false;
  };
  std::vector<Seed> seeds;
  for (int d = c.lo; d <= c.hi(); ++d) {
    if (c.width(d) == 0) continue;
    DegreeCohom coh = cohom_at(c, d);
    int htotal = 0;
    for (int t : coh.h.dim) htotal += t;
    if (htotal == 0) continue;
    for (auto& [iv, emb] : split_embeddings(coh.h)) {
      Seed s;
      s.deg = d;
      s.iv = iv;
      const int v0 = iv.lo - 1;
      // Generator class of the summand at its left end, lifted from quotient
      // coordinates to an actual kernel vector in the fiber.
      FpVec gk(coh.kb[v0].rows(), 0);
      for (size_t i = 0; i < coh.irep[v0].size(); ++i) gk[coh.irep[v0][i]] = emb[v0].at(static_cast<int>(i), 0);
      FpVec fib(coh.kb[v0].cols(), 0);
      for (int r = 0; r < coh.kb[v0].rows(); ++r) {
        if (gk[r] == 0) continue;
        for (int j = 0; j < coh.kb[v0].cols(); ++j)
          fib[j] = fp_add(fib[j], fp_mul(gk[r], coh.kb[v0].at(r, j), p), p);
      }
      auto fidx = fiber_of(c.at(d), iv.lo);
      s.col0.assign(c.width(d), 0);
      for (size_t j = 0; j < fidx.size(); ++j) s.col0[fidx[j]] = fib[j];
      if (iv.hi < n) {
        // The class dies one vertex past the interval, so its translate there
        // bounds; a preimage under the incoming differential closes the square.
        s.has1 = true;
        FpVec t = fib;
        for (int v = iv.lo; v <= iv.hi; ++v) t = fiber_step(c.at(d), v, p).apply(t);
        FpMatrix din = fiber_block(c.at(d - 1), c.at(d), diff_from(c, d - 1), iv.hi + 1, p);
        auto u = din.solve(t);
        if (!u) throw std::logic_error("summand class fails to bound past its interval");
        auto fprev = fiber_of(c.at(d - 1), iv.hi + 1);
        s.col1.assign(c.width(d - 1), 0);
        for (size_t j = 0; j < fprev.size(); ++j) s.col1[fprev[j]] = (*u)[j];
      }
      seeds.push_back(std::move(s));
    }
  }
  std::stable_sort(seeds.begin(), seeds.end(), [](const Seed& a, const Seed& b) {
    return std::pair(-a.deg, a.iv) < std::pair(-b.deg, b.iv);
  });

  Comparison out;
  for (const Seed& s : seeds) out.object.parts.push_back({-s.deg, s.iv});
  out.canon = resolve(n, out.object, p, &out.loc);
  for (size_t t = 0; t < seeds.size(); ++t) {
    const Seed& s = seeds[t];
    const auto& slot = out.loc.parts[t];
    FpMatrix& b0 = ensure_block(out.to_c, s.deg, c.width(s.deg), out.canon.width(s.deg), p);
    for (size_t r = 0; r < s.col0.size(); ++r)
      if (s.col0[r]) b0.set(static_cast<int>(r), slot.pos0, s.col0[r]);
    if (s.has1) {
      FpMatrix& b1 =
          ensure_block(out.to_c, s.deg - 1, c.width(s.deg - 1), out.canon.width(s.deg - 1), p);
      for (size_t r = 0; r < s.col1.size(); ++r)
        if (s.col1[r]) b1.set(static_cast<int>(r), slot.pos1, s.col1[r]);
    }
  }
  if (!is_chain_map(out.canon, c, out.to_c))
    throw std::logic_error("comparison map is not a chain map");

  // Homotopy inverse: joint solve for a chain map s with s . to_c homotopic
  // to the identity. Solvability is guaranteed because to_c is a
  // quasi-isomorphism between bounded complexes of projectives.
  VarLayout sL = make_layout(c, out.canon, 0);
  VarLayout hL = make_layout(out.canon, out.canon, -1);
  const int hoff = sL.size();
  const int nvars = sL.size() + hL.size();
  std::vector<FpVec> rows;
  FpVec rhs;
  FpMatrix cc = chain_condition(c, out.canon, sL);
  for (int r = 0; r < cc.rows(); ++r) {
    FpVec row(nvars, 0);
    for (int j = 0; j < cc.cols(); ++j) row[j] = cc.at(r, j);
    rows.push_back(std::move(row));
    rhs.push_back(0);
  }
  for (int d = out.canon.lo; d <= out.canon.hi(); ++d) {
    const int w = out.canon.width(d);
    if (w == 0) continue;
    FpMatrix kb = chain_block(out.to_c, d, out.canon, c);
    const FpMatrix* dprev = diff_from(out.canon, d - 1);
    const FpMatrix* dnext = diff_from(out.canon, d);
    for (int j = 0; j < w; ++j)
      for (int i = 0; i < w; ++i) {
        FpVec row(nvars, 0);
        for (int m = 0; m < kb.rows(); ++m) {
          uint32_t coef = kb.at(m, i);
          if (coef == 0) continue;
          int var = sL.find(d, j, m);
          if (var >= 0) row[var] = fp_add(row[var], coef, p);
        }
        if (dprev)
          for (int m = 0; m < dprev->cols(); ++m) {
            uint32_t coef = dprev->at(j, m);
            if (coef == 0) continue;
            int var = hL.find(d, m, i);
            if (var >= 0) row[hoff + var] = fp_sub(row[hoff + var], coef, p);
          }
        if (dnext)
          for (int m = 0; m < dnext->rows(); ++m) {
            uint32_t coef = dnext->at(m, i);
            if (coef == 0) continue;
            int var = hL.find(d + 1, j, m);
            if (var >= 0) row[hoff + var] = fp_sub(row[hoff + var], coef, p);
          }
        rows.push_back(std::move(row));
        rhs.push_back(j == i ? 1u : 0u);
      }
  }
  auto sol = FpMatrix::from_rows(rows, nvars, p).solve(rhs);
  if (!sol) throw std::logic_error("comparison map has no homotopy inverse");
  FpVec svec(sol->begin(), sol->begin() + sL.size());
  out.from_c = map_from_vec(sL, c, out.canon, svec);
  return out;
}

// --- coefficient morphisms -----------------------------------------------

FpMatrix zero_coeffs(const DerivedObject& x, const DerivedObject& y, uint32_t p) {
  return FpMatrix(static_cast<int>(y.parts.size()), static_cast<int>(x.parts.size()), p);
}

FpMatrix identity_coeffs(const DerivedObject& x, uint32_t p) {
  return FpMatrix::identity(static_cast<int>(x.parts.size()), p);
}

bool coeffs_legal(const DerivedObject& x, const DerivedObject& y, const FpMatrix& f) {
  if (f.rows() != static_cast<int>(y.parts.size()) || f.cols() != static_cast<int>(x.parts.size()))
    return false;
  for (int t = 0; t < f.rows(); ++t)
    for (int s = 0; s < f.cols(); ++s)
      if (f.at(t, s) != 0 && hom_dim_D_pair(x.parts[s], y.parts[t]) == 0) return false;
  return true;
}

ChainMap realize(int n, const DerivedObject& x, const DerivedObject& y, const FpMatrix& f,
                 uint32_t p) {
  if (!coeffs_legal(x, y, f)) throw std::invalid_argument("illegal coefficient matrix");
  CanonLoc lx, ly;
  ProjComplex rx = resolve(n, x, p, &lx);
  ProjComplex ry = resolve(n, y, p, &ly);
  ChainMap out;
  for (int t = 0; t < f.rows(); ++t)
    for (int s = 0; s < f.cols(); ++s) {
      uint32_t lam = f.at(t, s);
      if (lam == 0) continue;
      ChainMap gen = pair_generator(n, x.parts[s], y.parts[t], p);
      for (const auto& [pd, pb] : gen.blocks) {
        if (pb.rows() == 0 || pb.cols() == 0) continue;
        uint32_t e = pb.at(0, 0);
        if (e == 0) continue;
        int sp = big_position(lx.parts[s], pd);
        int tp = big_position(ly.parts[t], pd);
        if (sp < 0 || tp < 0) throw std::logic_error("pair generator outside the resolution span");
        ensure_block(out, pd, ry.width(pd), rx.width(pd), p).add_at(tp, sp, fp_mul(lam, e, p));
      }
    }
  return out;
}

FpMatrix express(int n, const DerivedObject& x, const DerivedObject& y, const ChainMap& f,
                 uint32_t p) {
  CanonLoc lx, ly;
  ProjComplex rx = resolve(n, x, p, &lx);
  ProjComplex ry = resolve(n, y, p, &ly);
  FpMatrix out = zero_coeffs(x, y, p);
  for (int t = 0; t < out.rows(); ++t)
    for (int s = 0; s < out.cols(); ++s) {
      if (hom_dim_D_pair(x.parts[s], y.parts[t]) == 0) continue;
      ProjComplex prx = resolve(n, DerivedObject::of(x.parts[s]), p);
      ProjComplex pry = resolve(n, DerivedObject::of(y.parts[t]), p);
      // The canonical differential is block diagonal across parts, so the
      // restriction of f to one (source, target) pair is itself a chain map.
      ChainMap sub;
      for (int d = prx.lo; d <= prx.hi(); ++d) {
        if (prx.width(d) == 0 || pry.width(d) == 0) continue;
        int sp = big_position(lx.parts[s], d);
        int tp = big_position(ly.parts[t], d);
        FpMatrix big = chain_block(f, d, rx, ry);
        if (big.at(tp, sp) == 0) continue;
        FpMatrix b(1, 1, p);
        b.set(0, 0, big.at(tp, sp));
        sub.blocks.emplace(d, std::move(b));
      }
      out.set(t, s, pair_class(prx, pry, sub, pair_generator(n, x.parts[s], y.parts[t], p)));
    }
  return out;
}

FpMatrix compose_coeffs(int n, const DerivedObject& x, const DerivedObject& y,
                        const DerivedObject& z, const FpMatrix& g, const FpMatrix& f, uint32_t p) {
  if (!coeffs_legal(x, y, f) || !coeffs_legal(y, z, g))
    throw std::invalid_argument("illegal coefficient matrix");
  FpMatrix out = zero_coeffs(x, z, p);
  for (int u = 0; u < out.rows(); ++u)
    for (int s = 0; s < out.cols(); ++s) {
      if (hom_dim_D_pair(x.parts[s], z.parts[u]) == 0) continue;
      uint32_t acc = 0;
      for (size_t t = 0; t < y.parts.size(); ++t) {
        uint32_t c1 = f.at(static_cast<int>(t), s);
        uint32_t c2 = g.at(u, static_cast<int>(t));
        if (c1 == 0 || c2 == 0) continue;
        uint32_t sc = structure_constant(n, p, x.parts[s], y.parts[t], z.parts[u]);
        acc = fp_add(acc, fp_mul(fp_mul(c1, c2, p), sc, p), p);
      }
      out.set(u, s, acc);
    }
  return out;
}

std::vector<std::pair<int, int>> hom_entries(const DerivedObject& x, const DerivedObject& y) {
  std::vector<std::pair<int, int>> out;
  for (size_t t = 0; t < y.parts.size(); ++t)
    for (size_t s = 0; s < x.parts.size(); ++s)
      if (hom_dim_D_pair(x.parts[s], y.parts[t]) == 1)
        out.emplace_back(static_cast<int>(t), static_cast<int>(s));
  return out;
}

FpVec coeffs_to_vec(const DerivedObject& x, const DerivedObject& y, const FpMatrix& f) {
  FpVec out;
  for (auto [t, s] : hom_entries(x, y)) out.push_back(f.at(t, s));
  return out;
}

FpMatrix coeffs_from_vec(const DerivedObject& x, const DerivedObject& y, const FpVec& v,
                         uint32_t p) {
  auto entries = hom_entries(x, y);
  if (v.size() != entries.size()) throw std::invalid_argument("coefficient vector has wrong length");
  FpMatrix out = zero_coeffs(x, y, p);
  for (size_t i = 0; i < entries.size(); ++i) out.set(entries[i].first, entries[i].second, v[i]);
  return out;
}

FpMatrix post_compose_matrix(int n, const DerivedObject& t, const DerivedObject& x,
                             const DerivedObject& y, const FpMatrix& f, uint32_t p) {
  auto dom = hom_entries(t, x);
  auto cod = hom_entries(t, y);
  FpMatrix m(static_cast<int>(cod.size()), static_cast<int>(dom.size()), p);
  for (size_t j = 0; j < dom.size(); ++j) {
    FpMatrix u = zero_coeffs(t, x, p);
    u.set(dom[j].first, dom[j].second, 1);
    FpVec col = coeffs_to_vec(t, y, compose_coeffs(n, t, x, y, f, u, p));
    for (size_t i = 0; i < col.size(); ++i) m.set(static_cast<int>(i), static_cast<int>(j), col[i]);
  }
  return m;
}

FpMatrix pre_compose_matrix(int n, const DerivedObject& t, const DerivedObject& x,
                            const DerivedObject& y, const FpMatrix& f, uint32_t p) {
  auto dom = hom_entries(y, t);
  auto cod = hom_entries(x, t);
  FpMatrix m(static_cast<int>(cod.size()), static_cast<int>(dom.size()), p);
  for (size_t j = 0; j < dom.size(); ++j) {
    FpMatrix u = zero_coeffs(y, t, p);
    u.set(dom[j].first, dom[j].second, 1);
    FpVec col = coeffs_to_vec(x, t, compose_coeffs(n, x, y, t, u, f, p));
    for (size_t i = 0; i < col.size(); ++i) m.set(static_cast<int>(i), static_cast<int>(j), col[i]);
  }
  return m;
}

// --- cones ---------------------------------------------------------------

DerivedObject cone_object(int n, const DerivedObject& x, const DerivedObject& y, const FpMatrix& f,
                          uint32_t p) {
  ProjComplex rx = resolve(n, x, p);
  ProjComplex ry = resolve(n, y, p);
  return decompose_complex(cone_complex(rx, ry, realize(n, x, y, f, p)));
}

TrianglePack cone_with_maps(int n, const DerivedObject& x, const DerivedObject& y,
                            const FpMatrix& f, uint32_t p) {
  ProjComplex rx = resolve(n, x, p);
  ProjComplex ry = resolve(n, y, p);
  ChainMap fc = realize(n, x, y, f, p);
  ProjComplex cc = cone_complex(rx, ry, fc);
  Comparison cmp = compare_to_canonical(cc);

  TrianglePack out;
  out.cone = cmp.object;

  ChainMap incl;
  for (int d = ry.lo; d <= ry.hi(); ++d) {
    if (ry.width(d) == 0) continue;
    FpMatrix b(cc.width(d), ry.width(d), p);
    const int off = rx.width(d + 1);
    for (int i = 0; i < ry.width(d); ++i) b.set(off + i, i, 1);
    incl.blocks.emplace(d, std::move(b));
  }
  if (!is_chain_map(ry, cc, incl)) throw std::logic_error("cone inclusion is not a chain map");
  out.incl = express(n, y, out.cone, compose_chain(ry, cc, cmp.canon, cmp.from_c, incl), p);

  DerivedObject sx = shift_of(x, 1);
  ProjComplex rsx = resolve(n, sx, p);
  ChainMap projm;
  for (int d = cc.lo; d <= cc.hi(); ++d) {
    const int wx = rx.width(d + 1);
    if (wx == 0) continue;
    FpMatrix b(wx, cc.width(d), p);
    for (int i = 0; i < wx; ++i) b.set(i, i, 1);
    projm.blocks.emplace(d, std::move(b));
  }
  if (!is_chain_map(cc, rsx, projm)) throw std::logic_error("cone projection is not a chain map");
  out.proj = express(n, out.cone, sx, compose_chain(cmp.canon, cc, rsx, projm, cmp.to_c), p);
  return out;
}

}  // namespace negcat
