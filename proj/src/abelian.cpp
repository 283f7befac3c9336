#include "negcat/abelian.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace negcat {

ClassVec vec_add(const ClassVec& a, const ClassVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("class vector sizes differ");
  ClassVec out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

ClassVec vec_sub(const ClassVec& a, const ClassVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("class vector sizes differ");
  ClassVec out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

int vec_total(const ClassVec& v) {
  int t = 0;
  for (int e : v) t += e;
  return t;
}

bool AbelianSubcat::contains_ind(int id) const {
  return std::find(inds.begin(), inds.end(), id) != inds.end();
}

bool AbelianSubcat::contains(const AmbObj& x) const {
  for (int id : x)
    if (!contains_ind(id)) return false;
  return true;
}

ClassVec AbelianSubcat::vec_of(const AmbObj& x) const {
  ClassVec out(simples.size(), 0);
  for (int id : x) {
    auto it = class_vec.find(id);
    if (it == class_vec.end()) throw std::invalid_argument("object leaves the subcategory");
    out = vec_add(out, it->second);
  }
  return out;
}

bool is_simple_minded(const Ambient& amb, const std::vector<int>& simples) {
  if (!amb.simple_system_shape(simples)) return false;
  for (size_t i = 0; i < simples.size(); ++i)
    for (size_t j = 0; j < simples.size(); ++j) {
      int want = i == j ? 1 : 0;
      if (amb.hom_dim_pair(simples[i], simples[j]) != want) return false;
      for (int d = 1; d <= amb.orthogonality_depth(); ++d)
        if (amb.hom_dim_pair(simples[i], amb.shift_ind(simples[j], -d)) != 0) return false;
    }
  return true;
}

std::vector<FpVec> projective_classes(int dim, uint32_t p, bool with_zero) {
  std::vector<FpVec> out;
  if (with_zero) out.emplace_back(static_cast<size_t>(dim), 0);
  if (dim <= 0) return out;
  if (dim > 20) throw std::invalid_argument("hom space too large to enumerate");
  // leading nonzero entry normalized to 1: one representative per scalar line
  for (int lead = 0; lead < dim; ++lead) {
    size_t tail = static_cast<size_t>(dim - lead - 1);
    size_t count = 1;
    for (size_t i = 0; i < tail; ++i) count *= p;
    for (size_t code = 0; code < count; ++code) {
      FpVec v(static_cast<size_t>(dim), 0);
      v[static_cast<size_t>(lead)] = 1;
      size_t rem = code;
      for (size_t i = 0; i < tail; ++i) {
        v[static_cast<size_t>(lead) + 1 + i] = static_cast<uint32_t>(rem % p);
        rem /= p;
      }
      out.push_back(std::move(v));
    }
  }
  return out;
}

AmbObj extension_middle_obj(const Ambient& amb, const AmbObj& sub, const AmbObj& quot,
                            const FpVec& cls) {
  AmbObj ssub = amb.shift_obj(sub, 1);
  return amb.shift_obj(amb.cone_obj(quot, ssub, cls), -1);
}

AbelianSubcat extension_closure(const Ambient& amb, const std::vector<int>& simples) {
  AbelianSubcat A;
  A.amb = &amb;
  A.simples = simples;
  std::set<int> known(simples.begin(), simples.end());
  if (known.size() != simples.size()) throw std::invalid_argument("repeated simple");
  for (size_t i = 0; i < simples.size(); ++i) {
    ClassVec e(simples.size(), 0);
    e[i] = 1;
    A.class_vec[simples[i]] = e;
  }

  size_t bound = amb.universe().size() + simples.size();
  std::set<std::pair<int, int>> processed;
  std::set<Conflation> seen;
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<int> current(known.begin(), known.end());
    for (int q : current)
      for (int s : current) {
        if (!processed.insert({q, s}).second) continue;
        AmbObj qo = amb.of(q), so = amb.of(s);
        int d = amb.hom_dim(qo, amb.shift_obj(so, 1));
        for (const FpVec& cls : projective_classes(d, amb.prime())) {
          AmbObj mid = extension_middle_obj(amb, so, qo, cls);
          Conflation conf{so, mid, qo};
          if (seen.insert(conf).second) A.conflations.push_back(conf);
          for (int id : mid)
            if (known.insert(id).second) {
              grew = true;
              if (known.size() > bound)
                throw std::runtime_error("extension closure left the ambient category");
            }
        }
      }
  }

  // Composition multiplicities: propagate additivity over the recorded
  // conflations until every indecomposable has a vector.
  bool progress = true;
  while (progress) {
    progress = false;
    for (const Conflation& c : A.conflations) {
      std::map<int, int> net;
      for (int id : c.total) net[id] += 1;
      for (int id : c.sub) net[id] -= 1;
      for (int id : c.quot) net[id] -= 1;
      ClassVec rhs(simples.size(), 0);
      int unknown = -1, coeff = 0;
      bool solvable = true;
      for (const auto& [id, k] : net) {
        if (k == 0) continue;
        auto it = A.class_vec.find(id);
        if (it != A.class_vec.end()) {
          for (size_t i = 0; i < rhs.size(); ++i) rhs[i] += k * it->second[i];
        } else if (unknown < 0) {
          unknown = id;
          coeff = k;
        } else {
          solvable = false;
        }
      }
      if (!solvable || unknown < 0 || coeff == 0) continue;
      ClassVec v(simples.size(), 0);
      bool ok = true;
      for (size_t i = 0; i < v.size(); ++i) {
        if (rhs[i] % coeff != 0) ok = false;
        v[i] = -rhs[i] / coeff;
        if (v[i] < 0) ok = false;
      }
      if (!ok) throw std::logic_error("inconsistent composition multiplicities");
      A.class_vec[unknown] = v;
      progress = true;
    }
  }
  for (int id : known)
    if (!A.class_vec.count(id))
      throw std::logic_error("composition multiplicities undetermined after closure");
  for (const Conflation& c : A.conflations)
    if (A.vec_of(c.total) != vec_add(A.vec_of(c.sub), A.vec_of(c.quot)))
      throw std::logic_error("conflation breaks class vector additivity");

  A.inds.assign(known.begin(), known.end());
  std::sort(A.inds.begin(), A.inds.end(), [&](int a, int b) { return amb.ind_less(a, b); });
  return A;
}

bool negative_exts_vanish(const AbelianSubcat& A, int depth) {
  const Ambient& amb = *A.amb;
  for (int a : A.inds)
    for (int b : A.inds)
      for (int i = 1; i <= depth; ++i)
        if (amb.hom_dim_pair(a, amb.shift_ind(b, -i)) != 0) return false;
  return true;
}

namespace {

void multisets_of(const std::vector<int>& pool, int max_parts, std::vector<AmbObj>* out) {
  std::vector<int> cur;
  auto rec = [&](auto&& self, size_t from) -> void {
    if (!cur.empty()) out->push_back(cur);
    if (static_cast<int>(cur.size()) == max_parts) return;
    for (size_t i = from; i < pool.size(); ++i) {
      cur.push_back(pool[i]);
      self(self, i);
      cur.pop_back();
    }
  };
  rec(rec, 0);
}

}  // namespace

std::vector<Conflation> enumerate_conflations(const Ambient& amb, const std::vector<int>& inds,
                                              int end_parts) {
  std::vector<int> pool = inds;
  std::sort(pool.begin(), pool.end(), [&](int a, int b) { return amb.ind_less(a, b); });
  std::vector<AmbObj> ends;
  multisets_of(pool, end_parts, &ends);

  std::set<int> member(inds.begin(), inds.end());
  std::set<Conflation> seen;
  std::vector<Conflation> out;
  for (const AmbObj& q : ends)
    for (const AmbObj& s : ends) {
      int d = amb.hom_dim(q, amb.shift_obj(s, 1));
      for (const FpVec& cls : projective_classes(d, amb.prime(), true)) {
        AmbObj mid = extension_middle_obj(amb, s, q, cls);
        for (int id : mid)
          if (!member.count(id))
            throw std::logic_error("middle term escapes the subcategory: " + amb.ind_name(id));
        Conflation conf{s, mid, q};
        if (seen.insert(conf).second) out.push_back(conf);
      }
    }
  return out;
}

bool is_mono_in(const AbelianSubcat& A, const AmbObj& x, const AmbObj& y, const FpVec& f) {
  AmbObj c = A.amb->cone_obj(x, y, f);
  return A.contains(c);
}

bool is_epi_in(const AbelianSubcat& A, const AmbObj& x, const AmbObj& y, const FpVec& f) {
  AmbObj c = A.amb->cone_obj(x, y, f);
  AmbObj desus = A.amb->shift_obj(c, -1);
  return A.contains(desus);
}

std::vector<FpVec> all_homs(const Ambient& amb, const AmbObj& x, const AmbObj& y) {
  int d = amb.hom_dim(x, y);
  if (d > 20) throw std::invalid_argument("hom space too large to enumerate");
  uint32_t p = amb.prime();
  size_t count = 1;
  for (int i = 0; i < d; ++i) count *= p;
  std::vector<FpVec> out;
  out.reserve(count);
  for (size_t code = 0; code < count; ++code) {
    FpVec v(static_cast<size_t>(d), 0);
    size_t rem = code;
    for (int i = 0; i < d; ++i) {
      v[static_cast<size_t>(i)] = static_cast<uint32_t>(rem % p);
      rem /= p;
    }
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace negcat
