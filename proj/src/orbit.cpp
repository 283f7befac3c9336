#include "negcat/orbit.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace negcat {

namespace {

int mod_n(int v, int m) {
  int r = v % m;
  return r < 0 ? r + m : r;
}

// Coordinates in the repetitive quiver plane: column c, row r in [1, n].
// The module M[a,b] sits at (-b, b-a+1); suspension and translate act by
// closed formulas that are iterated rather than solved in closed form.
struct Plane {
  int c = 0;
  int r = 0;
  auto operator<=>(const Plane&) const = default;
};

Plane sigma(Plane z, int n) { return {z.c + z.r, n + 1 - z.r}; }
Plane sigma_inv(Plane z, int n) { return {z.c - (n + 1 - z.r), n + 1 - z.r}; }

Plane plane_of(ShiftedInterval s, int n) {
  Plane z{-s.iv.hi, s.iv.length()};
  for (int i = 0; i < s.shift; ++i) z = sigma(z, n);
  for (int i = 0; i > s.shift; --i) z = sigma_inv(z, n);
  return z;
}

ShiftedInterval object_of_plane(Plane z, int n) {
  int k = 0;
  while (z.c >= 0) {
    z = sigma_inv(z, n);
    ++k;
  }
  while (z.c < -n) {
    z = sigma(z, n);
    --k;
  }
  if (z.r > -z.c) {
    z = sigma_inv(z, n);
    ++k;
  }
  int b = -z.c;
  return {k, {b - z.r + 1, b}};
}

}  // namespace

std::string to_string(Diagonal d) {
  return "(" + std::to_string(d.a) + "," + std::to_string(d.b) + ")";
}

void OrbitObject::add(Diagonal d) {
  parts.insert(std::upper_bound(parts.begin(), parts.end(), d), d);
}

void OrbitObject::add(const OrbitObject& other) {
  for (auto d : other.parts) add(d);
}

std::string to_string(const OrbitObject& x) {
  if (x.parts.empty()) return "0";
  std::string out;
  for (size_t i = 0; i < x.parts.size(); ++i) {
    if (i) out += " + ";
    out += to_string(x.parts[i]);
  }
  return out;
}

OrbitContext::OrbitContext(int w, int n, uint32_t p, int base_radius)
    : w_(w), n_(n), ngon_((w + 1) * (n + 1) - 2), p_(p), base_radius_(base_radius) {
  if (w < 1 || n < 1) throw std::invalid_argument("orbit context needs w >= 1 and n >= 1");
}

bool OrbitContext::admissible(Diagonal d) const {
  if (d.a < 0 || d.a >= d.b || d.b >= ngon_) return false;
  if ((d.b - d.a + 1) % (w_ + 1) != 0) return false;
  bool edge = (d.b - d.a == 1) || (d.a == 0 && d.b == ngon_ - 1);
  return !edge;
}

std::vector<Diagonal> OrbitContext::all_indecomposables() const {
  std::vector<Diagonal> out;
  for (int a = 0; a < ngon_; ++a)
    for (int b = a + 1; b < ngon_; ++b)
      if (admissible({a, b})) out.push_back({a, b});
  return out;
}

bool OrbitContext::crossing(Diagonal d1, Diagonal d2) const {
  bool in2a = d1.a < d2.a && d2.a < d1.b;
  bool in2b = d1.a < d2.b && d2.b < d1.b;
  return in2a != in2b;
}

bool OrbitContext::share_endpoint(Diagonal d1, Diagonal d2) const {
  return d1.a == d2.a || d1.a == d2.b || d1.b == d2.a || d1.b == d2.b;
}

Diagonal OrbitContext::rotate(Diagonal d, int k) const {
  int u = mod_n(d.a + k, ngon_);
  int v = mod_n(d.b + k, ngon_);
  if (u > v) std::swap(u, v);
  return {u, v};
}

ShiftedInterval OrbitContext::F(ShiftedInterval x, int k) const {
  for (int i = 0; i < k; ++i) x = shift_of(tau_D(n_, x), w_ + 1);
  for (int i = 0; i > k; --i) x = tau_D_inv(n_, shift_of(x, -(w_ + 1)));
  return x;
}

// Part order is preserved here and in lift: coefficient matrices of orbit
// morphisms are indexed by the orbit object's own part list, so the derived
// objects backing them must not be re-sorted.
DerivedObject OrbitContext::F(const DerivedObject& x, int k) const {
  DerivedObject out;
  for (auto s : x.parts) out.parts.push_back(F(s, k));
  return out;
}

ShiftedInterval OrbitContext::lift_part(Diagonal d) const {
  if (!admissible(d)) throw std::invalid_argument("lift of a non-admissible diagonal");
  auto f_plane = [&](Plane z) {
    for (int i = 0; i <= w_; ++i) z = sigma(z, n_);
    z.c -= 1;
    return z;
  };
  auto f_inv_plane = [&](Plane z) {
    z.c += 1;
    for (int i = 0; i <= w_; ++i) z = sigma_inv(z, n_);
    return z;
  };
  std::set<Plane> found;
  for (int ori = 0; ori < 2; ++ori) {
    int start = ori ? d.b : d.a;
    int arc = ori ? ngon_ - (d.b - d.a) : d.b - d.a;
    if ((arc + 1) % (w_ + 1) != 0) continue;
    int r = (arc + 1) / (w_ + 1);
    if (r < 1 || r > n_) continue;
    for (int c = 0; c < ngon_; ++c) {
      if (mod_n((w_ + 1) * c, ngon_) != start) continue;
      Plane z{c, r};
      while (f_inv_plane(z).c >= 0) z = f_inv_plane(z);
      while (z.c < 0) z = f_plane(z);
      found.insert(z);
    }
  }
  if (found.size() != 1)
    throw std::logic_error("diagonal does not have a unique normalized lift");
  return object_of_plane(*found.begin(), n_);
}

DerivedObject OrbitContext::lift(const OrbitObject& x) const {
  DerivedObject out;
  for (auto d : x.parts) out.parts.push_back(lift_part(d));
  return out;
}

Diagonal OrbitContext::project_part(ShiftedInterval s) const {
  Plane z = plane_of(s, n_);
  int a = mod_n((w_ + 1) * z.c, ngon_);
  int b = mod_n(a + z.r * (w_ + 1) - 1, ngon_);
  if (a > b) std::swap(a, b);
  Diagonal d{a, b};
  if (!admissible(d)) throw std::logic_error("object projects to a non-admissible chord");
  return d;
}

OrbitObject OrbitContext::project(const DerivedObject& x) const {
  OrbitObject out;
  for (auto s : x.parts) out.add(project_part(s));
  return out;
}

int OrbitContext::twist_index(ShiftedInterval s) const {
  ShiftedInterval cur = lift_part(project_part(s));
  int col = plane_of(s, n_).c;
  int t = 0;
  for (int guard = 0; guard < 4 * ngon_ + 8; ++guard) {
    int cc = plane_of(cur, n_).c;
    if (cc == col) {
      if (cur == s) return t;
      break;
    }
    if (cc < col) {
      cur = F(cur, 1);
      ++t;
    } else {
      cur = F(cur, -1);
      --t;
    }
  }
  throw std::logic_error("object is not in the orbit of its own projection");
}

std::pair<int, int> OrbitContext::plane_coords(Diagonal d) const {
  Plane z = plane_of(lift_part(d), n_);
  return {z.c, z.r};
}

OrbitObject OrbitContext::shift_C(const OrbitObject& x, int k) const {
  return project(shift_of(lift(x), k));
}

OrbitObject OrbitContext::tau_C(const OrbitObject& x) const {
  DerivedObject lx = lift(x);
  DerivedObject out;
  for (auto s : lx.parts) out.add(tau_D(n_, s));
  return project(out);
}

OrbitObject OrbitContext::serre(const OrbitObject& x) const { return shift_C(x, -w_); }

Diagonal OrbitContext::tau_diag(Diagonal d) const {
  return project_part(tau_D(n_, lift_part(d)));
}

int OrbitContext::hom_layer(const OrbitObject& x, const OrbitObject& y, int k) const {
  return hom_dim_D_obj(lift(x), F(lift(y), k));
}

std::pair<int, int> OrbitContext::hom_window(const OrbitObject& x, const OrbitObject& y) const {
  if (x.empty() || y.empty()) return {0, -1};
  DerivedObject lx = lift(x), ly = lift(y);
  int span = 0;
  for (auto sx : lx.parts)
    for (auto sy : ly.parts) span = std::max(span, std::abs(sx.shift - sy.shift));
  int start = (span + n_ + w_) / (w_ + 1) + 1;
  start = std::max(start, base_radius_);
  int lo = -start, hi = start;
  auto layer = [&](int k) { return hom_dim_D_obj(lx, F(ly, k)); };
  constexpr int kCap = 400;
  while (layer(hi) + layer(hi - 1) > 0) {
    ++hi;
    if (hi > kCap) throw std::logic_error("hom window exhausted on the positive side");
  }
  while (layer(lo) + layer(lo + 1) > 0) {
    --lo;
    if (lo < -kCap) throw std::logic_error("hom window exhausted on the negative side");
  }
  return {lo, hi};
}

int OrbitContext::hom_dim_C(const OrbitObject& x, const OrbitObject& y) const {
  auto [lo, hi] = hom_window(x, y);
  int total = 0;
  for (int k = lo; k <= hi; ++k) total += hom_layer(x, y, k);
  return total;
}

OrbitMorphism OrbitContext::zero_mor(const OrbitObject& x, const OrbitObject& y) const {
  return {x, y, {}};
}

OrbitMorphism OrbitContext::identity_mor(const OrbitObject& x) const {
  OrbitMorphism out{x, x, {}};
  out.comp[0] = identity_coeffs(lift(x), p_);
  return out;
}

OrbitMorphism OrbitContext::compose(const OrbitMorphism& g, const OrbitMorphism& f) const {
  if (!(f.dst == g.src)) throw std::invalid_argument("orbit composition needs matching objects");
  DerivedObject lx = lift(f.src), ly = lift(f.dst), lz = lift(g.dst);
  OrbitMorphism out{f.src, g.dst, {}};
  for (const auto& [j, fj] : f.comp) {
    if (fj.is_zero()) continue;
    for (const auto& [i, gi] : g.comp) {
      if (gi.is_zero()) continue;
      int k = i + j;
      FpMatrix part = compose_coeffs(n_, lx, F(ly, j), F(lz, k), gi, fj, p_);
      auto it = out.comp.find(k);
      if (it == out.comp.end())
        out.comp[k] = part;
      else
        it->second = it->second + part;
    }
  }
  for (auto it = out.comp.begin(); it != out.comp.end();)
    it = it->second.is_zero() ? out.comp.erase(it) : std::next(it);
  return out;
}

bool OrbitContext::mor_is_zero(const OrbitMorphism& f) const {
  for (const auto& [k, m] : f.comp)
    if (!m.is_zero()) return false;
  return true;
}

OrbitMorphism OrbitContext::shift_mor(const OrbitMorphism& f, int k) const {
  OrbitObject sx = shift_C(f.src, k), sy = shift_C(f.dst, k);
  // Shifting a canonical lift can leave the fundamental orbit domain; record
  // per part how far, and retwist each matrix entry accordingly.
  auto retwists = [&](const OrbitObject& obj) {
    std::vector<int> out;
    for (auto d : obj.parts) out.push_back(twist_index(shift_of(lift_part(d), k)));
    return out;
  };
  auto slot_map = [&](const OrbitObject& from, const OrbitObject& to) {
    std::vector<int> out(from.parts.size());
    std::vector<bool> used(to.parts.size(), false);
    for (size_t i = 0; i < from.parts.size(); ++i) {
      Diagonal want = rotate(from.parts[i], k);
      for (size_t j = 0; j < to.parts.size(); ++j)
        if (!used[j] && to.parts[j] == want) {
          out[i] = static_cast<int>(j);
          used[j] = true;
          break;
        }
    }
    return out;
  };
  std::vector<int> tx = retwists(f.src), ty = retwists(f.dst);
  std::vector<int> px = slot_map(f.src, sx), py = slot_map(f.dst, sy);
  OrbitMorphism out{sx, sy, {}};
  size_t rows = f.dst.parts.size(), cols = f.src.parts.size();
  for (const auto& [t, m] : f.comp)
    for (size_t u = 0; u < rows; ++u)
      for (size_t i = 0; i < cols; ++i) {
        uint32_t v = m.at(u, i);
        if (!v) continue;
        int nt = t + ty[u] - tx[i];
        auto it = out.comp.find(nt);
        if (it == out.comp.end())
          it = out.comp.emplace(nt, FpMatrix(rows, cols, p_)).first;
        it->second.add_at(static_cast<size_t>(py[u]), static_cast<size_t>(px[i]), v);
      }
  return out;
}

std::vector<OrbitMorphism> OrbitContext::hom_basis_C(const OrbitObject& x,
                                                     const OrbitObject& y) const {
  std::vector<OrbitMorphism> out;
  if (x.empty() || y.empty()) return out;
  auto [lo, hi] = hom_window(x, y);
  DerivedObject lx = lift(x), ly = lift(y);
  for (int k = lo; k <= hi; ++k) {
    DerivedObject fy = F(ly, k);
    for (auto [t, s] : hom_entries(lx, fy)) {
      OrbitMorphism m{x, y, {}};
      FpMatrix mat(ly.parts.size(), lx.parts.size(), p_);
      mat.set(static_cast<size_t>(t), static_cast<size_t>(s), 1);
      m.comp[k] = mat;
      out.push_back(std::move(m));
    }
  }
  return out;
}

FpVec OrbitContext::mor_to_vec(const OrbitMorphism& f) const {
  auto [lo, hi] = hom_window(f.src, f.dst);
  DerivedObject lx = lift(f.src), ly = lift(f.dst);
  FpVec out;
  for (const auto& [k, m] : f.comp)
    if (!m.is_zero() && (k < lo || k > hi))
      throw std::logic_error("morphism component outside its hom window");
  for (int k = lo; k <= hi; ++k) {
    auto it = f.comp.find(k);
    for (auto [t, s] : hom_entries(lx, F(ly, k)))
      out.push_back(it == f.comp.end()
                        ? 0
                        : it->second.at(static_cast<size_t>(t), static_cast<size_t>(s)));
  }
  return out;
}

OrbitMorphism OrbitContext::mor_from_vec(const OrbitObject& x, const OrbitObject& y,
                                         const FpVec& v) const {
  auto [lo, hi] = hom_window(x, y);
  DerivedObject lx = lift(x), ly = lift(y);
  OrbitMorphism out{x, y, {}};
  size_t pos = 0;
  for (int k = lo; k <= hi; ++k) {
    auto entries = hom_entries(lx, F(ly, k));
    if (entries.empty()) continue;
    FpMatrix mat(ly.parts.size(), lx.parts.size(), p_);
    bool nz = false;
    for (auto [t, s] : entries) {
      if (pos >= v.size()) throw std::invalid_argument("morphism vector is too short");
      uint32_t c = v[pos++] % p_;
      if (c) {
        mat.set(static_cast<size_t>(t), static_cast<size_t>(s), c);
        nz = true;
      }
    }
    if (nz) out.comp[k] = std::move(mat);
  }
  if (pos != v.size()) throw std::invalid_argument("morphism vector has the wrong length");
  return out;
}

// Window of orbit copies used by the equivariant cone: the parts are
// F^j lift(d_i) for each part d_i and |j| <= radius, stored sorted with the
// position of each (part, copy) slot remembered.
struct OrbitContext::Window {
  DerivedObject obj;
  std::map<std::pair<int, int>, int> pos;
  int radius = 0;
};

OrbitContext::Window OrbitContext::make_window(const OrbitObject& x, int radius) const {
  Window out;
  out.radius = radius;
  for (size_t i = 0; i < x.parts.size(); ++i) {
    ShiftedInterval base = lift_part(x.parts[i]);
    for (int j = -radius; j <= radius; ++j) {
      out.pos[{static_cast<int>(i), j}] = static_cast<int>(out.obj.parts.size());
      out.obj.parts.push_back(F(base, j));
    }
  }
  return out;
}

int OrbitContext::support_radius(const OrbitMorphism& f) const {
  int s = 0;
  for (const auto& [k, m] : f.comp)
    if (!m.is_zero()) s = std::max(s, std::abs(k));
  return s;
}

namespace {

struct WindowCls {
  Diagonal d;
  int t = 0;
};

}  // namespace

FpMatrix OrbitContext::periodized_map(const Window& wx, const Window& wy,
                                      const OrbitMorphism& f) const {
  int radius = wx.radius;
  FpMatrix big(wy.obj.parts.size(), wx.obj.parts.size(), p_);
  for (const auto& [t, m] : f.comp)
    for (size_t i = 0; i < f.src.parts.size(); ++i)
      for (int j = -radius; j <= radius; ++j) {
        if (std::abs(j + t) > radius) continue;
        for (size_t u = 0; u < f.dst.parts.size(); ++u) {
          uint32_t v = m.at(u, i);
          if (!v) continue;
          big.add_at(static_cast<size_t>(wy.pos.at({static_cast<int>(u), j + t})),
                     static_cast<size_t>(wx.pos.at({static_cast<int>(i), j})), v);
        }
      }
  return big;
}

OrbitObject OrbitContext::cone_center(const OrbitMorphism& f, int radius) const {
  Window wx = make_window(f.src, radius), wy = make_window(f.dst, radius);
  DerivedObject cone = cone_object(n_, wx.obj, wy.obj, periodized_map(wx, wy, f), p_);
  OrbitObject out;
  for (auto s : cone.parts)
    if (twist_index(s) == 0) out.add(project_part(s));
  return out;
}

OrbitObject OrbitContext::cone_object_C(const OrbitMorphism& f) const {
  int radius = std::max(support_radius(f) + 2, std::max(base_radius_, 2));
  OrbitObject prev = cone_center(f, radius);
  for (int step = 0; step < 10; ++step) {
    OrbitObject next = cone_center(f, radius + 1);
    if (next == prev) return next;
    prev = std::move(next);
    ++radius;
  }
  throw std::logic_error("windowed cone did not stabilize");
}

OrbitTriangle OrbitContext::cone_C(const OrbitMorphism& f) const {
  OrbitObject cone = cone_object_C(f);
  int radius = std::max(support_radius(f) + 3, std::max(base_radius_, 3));
  Window wx = make_window(f.src, radius), wy = make_window(f.dst, radius);
  TrianglePack pack = cone_with_maps(n_, wx.obj, wy.obj, periodized_map(wx, wy, f), p_);

  std::vector<WindowCls> cone_cls;
  for (auto s : pack.cone.parts) cone_cls.push_back({project_part(s), twist_index(s)});
  {
    OrbitObject center;
    for (const auto& c : cone_cls)
      if (c.t == 0) center.add(c.d);
    if (!(center == cone))
      throw std::logic_error("triangle window disagrees with the stabilized cone");
  }

  // Positions of the m-th copy of each diagonal of `cone` at a given twist.
  auto cone_slots = [&](int t) {
    std::vector<int> out(cone.parts.size(), -1);
    std::vector<size_t> taken;
    for (size_t m = 0; m < cone.parts.size(); ++m)
      for (size_t q = 0; q < cone_cls.size(); ++q) {
        if (cone_cls[q].t != t || !(cone_cls[q].d == cone.parts[m])) continue;
        if (std::find(taken.begin(), taken.end(), q) != taken.end()) continue;
        out[m] = static_cast<int>(q);
        taken.push_back(q);
        break;
      }
    return out;
  };

  OrbitTriangle out;
  out.cone = cone;

  // incl: restrict the upstairs inclusion to the center copy of the target and
  // regroup its rows by the twist of the cone part they land in.
  out.incl = OrbitMorphism{f.dst, cone, {}};
  {
    std::set<int> twists;
    for (const auto& c : cone_cls) twists.insert(c.t);
    for (int t : twists) {
      auto slots = cone_slots(t);
      FpMatrix mat(cone.parts.size(), f.dst.parts.size(), p_);
      bool nz = false, partial = false;
      for (size_t m = 0; m < cone.parts.size(); ++m) {
        if (slots[m] < 0) {
          partial = true;
          continue;
        }
        for (size_t i = 0; i < f.dst.parts.size(); ++i) {
          uint32_t v = pack.incl.at(static_cast<size_t>(slots[m]),
                                    static_cast<size_t>(wy.pos.at({static_cast<int>(i), 0})));
          if (v) {
            mat.set(m, i, v);
            nz = true;
          }
        }
      }
      if (nz) {
        if (partial) throw std::logic_error("triangle inclusion truncated by the window");
        out.incl.comp[t] = std::move(mat);
      }
    }
  }

  // proj: restrict the upstairs projection to the center copy of the cone;
  // its rows land on suspended window parts, classified directly.
  out.proj = OrbitMorphism{cone, shift_C(f.src, 1), {}};
  {
    DerivedObject sxw = shift_of(wx.obj, 1);
    std::vector<WindowCls> sx_cls;
    for (auto s : sxw.parts) sx_cls.push_back({project_part(s), twist_index(s)});
    const OrbitObject& sx = out.proj.dst;
    auto center_of_cone = cone_slots(0);
    std::set<int> twists;
    for (const auto& c : sx_cls) twists.insert(c.t);
    for (int t : twists) {
      std::vector<int> slots(sx.parts.size(), -1);
      std::vector<size_t> taken;
      for (size_t m = 0; m < sx.parts.size(); ++m)
        for (size_t q = 0; q < sx_cls.size(); ++q) {
          if (sx_cls[q].t != t || !(sx_cls[q].d == sx.parts[m])) continue;
          if (std::find(taken.begin(), taken.end(), q) != taken.end()) continue;
          slots[m] = static_cast<int>(q);
          taken.push_back(q);
          break;
        }
      FpMatrix mat(sx.parts.size(), cone.parts.size(), p_);
      bool nz = false, partial = false;
      for (size_t m = 0; m < sx.parts.size(); ++m) {
        if (slots[m] < 0) {
          partial = true;
          continue;
        }
        for (size_t i = 0; i < cone.parts.size(); ++i) {
          if (center_of_cone[i] < 0)
            throw std::logic_error("cone center slot missing in the triangle window");
          uint32_t v = pack.proj.at(static_cast<size_t>(slots[m]),
                                    static_cast<size_t>(center_of_cone[i]));
          if (v) {
            mat.set(m, i, v);
            nz = true;
          }
        }
      }
      if (nz) {
        if (partial) throw std::logic_error("triangle projection truncated by the window");
        out.proj.comp[t] = std::move(mat);
      }
    }
  }

  if (!mor_is_zero(compose(out.incl, f)))
    throw std::logic_error("triangle inclusion does not annihilate the morphism");
  if (!mor_is_zero(compose(out.proj, out.incl)))
    throw std::logic_error("triangle projection does not annihilate the inclusion");
  return out;
}

ArQuiver OrbitContext::ar_quiver() const {
  ArQuiver out;
  out.vertices = all_indecomposables();
  std::set<std::pair<Diagonal, Diagonal>> arrows;
  for (auto d : out.vertices) {
    Plane z = plane_of(lift_part(d), n_);
    if (z.r < n_)
      arrows.insert({d, project_part(object_of_plane({z.c, z.r + 1}, n_))});
    if (z.r > 1)
      arrows.insert({d, project_part(object_of_plane({z.c + 1, z.r - 1}, n_))});
  }
  out.arrows.assign(arrows.begin(), arrows.end());
  return out;
}

}  // namespace negcat
