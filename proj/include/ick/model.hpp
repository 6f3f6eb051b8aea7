#ifndef ICK_MODEL_HPP
#define ICK_MODEL_HPP

// Finite birelational Kripke models (intuitionistic order + per-agent
// accessibility), classical S5 models, frame-class checking, truth
// evaluation, and the model constructions: closure to a frame class,
// reduced model (maximal worlds), induced model (identity order).

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ick/formula.hpp"

namespace ick {

enum class FrameClass { Epistemic, Reflexive, S4, S5 };

inline std::string frame_class_name(FrameClass fc) {
  switch (fc) {
    case FrameClass::Epistemic: return "epistemic";
    case FrameClass::Reflexive: return "reflexive";
    case FrameClass::S4: return "S4";
    case FrameClass::S5: return "S5";
  }
  return "?";
}

inline std::optional<FrameClass> frame_class_from_name(const std::string& s) {
  if (s == "epistemic") return FrameClass::Epistemic;
  if (s == "reflexive") return FrameClass::Reflexive;
  if (s == "S4" || s == "s4") return FrameClass::S4;
  if (s == "S5" || s == "s5") return FrameClass::S5;
  return std::nullopt;
}

// Dense boolean relation over world indices.
struct Rel {
  int n = 0;
  std::vector<char> bits;

  Rel() = default;
  explicit Rel(int n_) : n(n_), bits(static_cast<size_t>(n_) * n_, 0) {}

  char& at(int i, int j) { return bits[static_cast<size_t>(i) * n + j]; }
  bool at(int i, int j) const { return bits[static_cast<size_t>(i) * n + j] != 0; }
  bool operator==(const Rel& o) const { return n == o.n && bits == o.bits; }

  static Rel identity(int n) {
    Rel r(n);
    for (int i = 0; i < n; ++i) r.at(i, i) = 1;
    return r;
  }

  Rel unite(const Rel& o) const {
    Rel r = *this;
    for (size_t k = 0; k < bits.size(); ++k) r.bits[k] |= o.bits[k];
    return r;
  }

  Rel transitive_closure() const {
    Rel r = *this;
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        if (r.at(i, k))
          for (int j = 0; j < n; ++j)
            if (r.at(k, j)) r.at(i, j) = 1;
    return r;
  }

  Rel reflexive_transitive_closure() const { return unite(identity(n)).transitive_closure(); }
};

struct Model {
  std::vector<std::string> worlds;
  Rel order;                        // intuitionistic partial order <=
  std::map<std::string, Rel> rel;   // per-agent accessibility R_a
  std::vector<std::vector<std::string>> valuation;  // atoms true at each world

  int size() const { return static_cast<int>(worlds.size()); }

  int world_index(const std::string& name) const {
    for (int i = 0; i < size(); ++i)
      if (worlds[i] == name) return i;
    throw std::invalid_argument("unknown world '" + name + "'");
  }

  bool has_atom(int w, const std::string& p) const {
    for (const auto& q : valuation[w])
      if (q == p) return true;
    return false;
  }

  // Union of all agent relations.
  Rel union_relation() const {
    Rel r(size());
    for (const auto& [a, ra] : rel) r = r.unite(ra);
    return r;
  }
};

// Classical model: no intuitionistic order; relations should be equivalences.
struct ClassicalModel {
  std::vector<std::string> worlds;
  std::map<std::string, Rel> rel;
  std::vector<std::vector<std::string>> valuation;

  int size() const { return static_cast<int>(worlds.size()); }

  int world_index(const std::string& name) const {
    for (int i = 0; i < size(); ++i)
      if (worlds[i] == name) return i;
    throw std::invalid_argument("unknown world '" + name + "'");
  }

  bool has_atom(int w, const std::string& p) const {
    for (const auto& q : valuation[w])
      if (q == p) return true;
    return false;
  }

  Rel union_relation() const {
    Rel r(size());
    for (const auto& [a, ra] : rel) r = r.unite(ra);
    return r;
  }
};

// --- frame checking ---------------------------------------------------------

// Empty result means the model lies in the class: partial order, monotone
// valuation, triangle confluence, plus per-agent conditions of the class.
inline std::vector<std::string> check_frame(const Model& m, FrameClass fc) {
  std::vector<std::string> bad;
  const int n = m.size();
  auto world = [&](int i) { return m.worlds[i]; };

  for (int i = 0; i < n; ++i)
    if (!m.order.at(i, i)) bad.push_back("order not reflexive at " + world(i));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i != j && m.order.at(i, j) && m.order.at(j, i))
        bad.push_back("order not antisymmetric on (" + world(i) + "," + world(j) + ")");
      if (!m.order.at(i, j)) continue;
      for (int k = 0; k < n; ++k)
        if (m.order.at(j, k) && !m.order.at(i, k))
          bad.push_back("order not transitive on (" + world(i) + "," + world(j) + "," + world(k) + ")");
    }

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (m.order.at(i, j))
        for (const auto& p : m.valuation[i])
          if (!m.has_atom(j, p))
            bad.push_back("valuation not monotone: " + p + " at " + world(i) +
                          " but not at " + world(j));

  for (const auto& [a, ra] : m.rel) {
    // triangle confluence: w <= v and v R_a u imply w R_a u
    for (int w = 0; w < n; ++w)
      for (int v = 0; v < n; ++v)
        if (m.order.at(w, v))
          for (int u = 0; u < n; ++u)
            if (ra.at(v, u) && !ra.at(w, u))
              bad.push_back("triangle confluence fails for " + a + " on (" +
                            world(w) + "," + world(v) + "," + world(u) + ")");
    if (fc == FrameClass::Reflexive || fc == FrameClass::S4 || fc == FrameClass::S5)
      for (int w = 0; w < n; ++w)
        if (!ra.at(w, w)) bad.push_back("R_" + a + " not reflexive at " + world(w));
    if (fc == FrameClass::S4 || fc == FrameClass::S5)
      for (int w = 0; w < n; ++w)
        for (int v = 0; v < n; ++v)
          if (ra.at(w, v))
            for (int u = 0; u < n; ++u)
              if (ra.at(v, u) && !ra.at(w, u))
                bad.push_back("R_" + a + " not transitive on (" + world(w) + "," +
                              world(v) + "," + world(u) + ")");
    if (fc == FrameClass::S5)
      for (int w = 0; w < n; ++w)
        for (int v = 0; v < n; ++v)
          if (ra.at(w, v) && !ra.at(v, w))
            bad.push_back("R_" + a + " not symmetric on (" + world(w) + "," + world(v) + ")");
  }
  return bad;
}

inline std::vector<std::string> check_classical(const ClassicalModel& m) {
  std::vector<std::string> bad;
  const int n = m.size();
  for (const auto& [a, ra] : m.rel) {
    for (int w = 0; w < n; ++w)
      if (!ra.at(w, w)) bad.push_back("R_" + a + " not reflexive at " + m.worlds[w]);
    for (int w = 0; w < n; ++w)
      for (int v = 0; v < n; ++v) {
        if (ra.at(w, v) && !ra.at(v, w))
          bad.push_back("R_" + a + " not symmetric on (" + m.worlds[w] + "," + m.worlds[v] + ")");
        if (!ra.at(w, v)) continue;
        for (int u = 0; u < n; ++u)
          if (ra.at(v, u) && !ra.at(w, u))
            bad.push_back("R_" + a + " not transitive on (" + m.worlds[w] + "," +
                          m.worlds[v] + "," + m.worlds[u] + ")");
      }
  }
  return bad;
}

// --- truth evaluation -------------------------------------------------------

// Evaluates bottom-up into per-world truth vectors, memoized per subformula.
class Evaluator {
 public:
  explicit Evaluator(const Model& m)
      : m_(m), rstar_(m.union_relation().reflexive_transitive_closure()) {}

  bool truth(int w, F f) { return table(f)[w] != 0; }

 private:
  const Model& m_;
  Rel rstar_;
  std::map<F, std::vector<char>> memo_;

  const std::vector<char>& table(F f) {
    auto it = memo_.find(f);
    if (it != memo_.end()) return it->second;
    const int n = m_.size();
    std::vector<char> t(n, 0);
    switch (f->kind) {
      case Kind::Bottom: break;
      case Kind::Atom:
        for (int w = 0; w < n; ++w) t[w] = m_.has_atom(w, f->name);
        break;
      case Kind::And: {
        const auto &l = table(f->lhs), &r = table(f->rhs);
        for (int w = 0; w < n; ++w) t[w] = l[w] && r[w];
        break;
      }
      case Kind::Or: {
        const auto &l = table(f->lhs), &r = table(f->rhs);
        for (int w = 0; w < n; ++w) t[w] = l[w] || r[w];
        break;
      }
      case Kind::Implies: {
        const auto &l = table(f->lhs), &r = table(f->rhs);
        for (int w = 0; w < n; ++w) {
          t[w] = 1;
          for (int v = 0; v < n && t[w]; ++v)
            if (m_.order.at(w, v) && l[v] && !r[v]) t[w] = 0;
        }
        break;
      }
      case Kind::Know: {
        const auto& b = table(f->lhs);
        auto it2 = m_.rel.find(f->name);
        for (int w = 0; w < n; ++w) {
          t[w] = 1;
          if (it2 == m_.rel.end()) continue;  // empty relation: vacuous
          for (int v = 0; v < n && t[w]; ++v)
            if (it2->second.at(w, v) && !b[v]) t[w] = 0;
        }
        break;
      }
      case Kind::Com: {
        const auto& b = table(f->lhs);
        for (int w = 0; w < n; ++w) {
          t[w] = 1;
          for (int v = 0; v < n && t[w]; ++v)
            if (rstar_.at(w, v) && !b[v]) t[w] = 0;
        }
        break;
      }
    }
    return memo_.emplace(f, std::move(t)).first->second;
  }
};

inline bool eval(const Model& m, int w, F f) {
  if (w < 0 || w >= m.size()) throw std::invalid_argument("unknown world index");
  return Evaluator(m).truth(w, f);
}

inline bool eval(const Model& m, const std::string& w, F f) {
  return eval(m, m.world_index(w), f);
}

class ClassicalEvaluator {
 public:
  explicit ClassicalEvaluator(const ClassicalModel& m)
      : m_(m), rstar_(m.union_relation().reflexive_transitive_closure()) {}

  bool truth(int w, F f) { return table(f)[w] != 0; }

 private:
  const ClassicalModel& m_;
  Rel rstar_;
  std::map<F, std::vector<char>> memo_;

  const std::vector<char>& table(F f) {
    auto it = memo_.find(f);
    if (it != memo_.end()) return it->second;
    const int n = m_.size();
    std::vector<char> t(n, 0);
    switch (f->kind) {
      case Kind::Bottom: break;
      case Kind::Atom:
        for (int w = 0; w < n; ++w) t[w] = m_.has_atom(w, f->name);
        break;
      case Kind::And: {
        const auto &l = table(f->lhs), &r = table(f->rhs);
        for (int w = 0; w < n; ++w) t[w] = l[w] && r[w];
        break;
      }
      case Kind::Or: {
        const auto &l = table(f->lhs), &r = table(f->rhs);
        for (int w = 0; w < n; ++w) t[w] = l[w] || r[w];
        break;
      }
      case Kind::Implies: {
        const auto &l = table(f->lhs), &r = table(f->rhs);
        for (int w = 0; w < n; ++w) t[w] = !l[w] || r[w];
        break;
      }
      case Kind::Know: {
        const auto& b = table(f->lhs);
        auto it2 = m_.rel.find(f->name);
        for (int w = 0; w < n; ++w) {
          t[w] = 1;
          if (it2 == m_.rel.end()) continue;
          for (int v = 0; v < n && t[w]; ++v)
            if (it2->second.at(w, v) && !b[v]) t[w] = 0;
        }
        break;
      }
      case Kind::Com: {
        const auto& b = table(f->lhs);
        for (int w = 0; w < n; ++w) {
          t[w] = 1;
          for (int v = 0; v < n && t[w]; ++v)
            if (rstar_.at(w, v) && !b[v]) t[w] = 0;
        }
        break;
      }
    }
    return memo_.emplace(f, std::move(t)).first->second;
  }
};

inline bool eval_classical(const ClassicalModel& m, int w, F f) {
  if (w < 0 || w >= m.size()) throw std::invalid_argument("unknown world index");
  return ClassicalEvaluator(m).truth(w, f);
}

inline bool eval_classical(const ClassicalModel& m, const std::string& w, F f) {
  return eval_classical(m, m.world_index(w), f);
}

// --- model constructions ----------------------------------------------------

// Closes the agent relations under triangle confluence (R_a gains (w,u)
// whenever w <= v and v R_a u) plus reflexivity / transitivity as the class
// demands, iterated to a fixpoint so the result passes check_frame.
inline Model close_model(const Model& m, FrameClass fc) {
  if (fc == FrameClass::S5)
    throw std::invalid_argument("close_model: no S5 closure construction exists");
  Model out = m;
  const int n = out.size();
  for (bool changed = true; changed;) {
    changed = false;
    for (auto& [a, ra] : out.rel) {
      Rel next = ra;
      for (int w = 0; w < n; ++w)
        for (int v = 0; v < n; ++v)
          if (out.order.at(w, v))
            for (int u = 0; u < n; ++u)
              if (ra.at(v, u)) next.at(w, u) = 1;
      if (fc == FrameClass::Reflexive || fc == FrameClass::S4)
        next = next.unite(Rel::identity(n));
      if (fc == FrameClass::S4) next = next.transitive_closure();
      if (!(next == ra)) {
        ra = next;
        changed = true;
      }
    }
  }
  return out;
}

// Reduced model: keep only <=-maximal worlds; requires an S5 input.
inline ClassicalModel reduced_model(const Model& m) {
  if (!check_frame(m, FrameClass::S5).empty())
    throw std::invalid_argument("reduced_model requires an S5 model");
  const int n = m.size();
  std::vector<int> keep;
  for (int w = 0; w < n; ++w) {
    bool maximal = true;
    for (int v = 0; v < n && maximal; ++v)
      if (v != w && m.order.at(w, v) && !m.order.at(v, w)) maximal = false;
    if (maximal) keep.push_back(w);
  }
  ClassicalModel out;
  for (int w : keep) {
    out.worlds.push_back(m.worlds[w]);
    out.valuation.push_back(m.valuation[w]);
  }
  const int k = static_cast<int>(keep.size());
  for (const auto& [a, ra] : m.rel) {
    Rel r(k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) r.at(i, j) = ra.at(keep[i], keep[j]);
    out.rel[a] = r;
  }
  return out;
}

// Induced model: classical model viewed birelationally with identity order.
inline Model induced_model(const ClassicalModel& m) {
  if (!check_classical(m).empty())
    throw std::invalid_argument("induced_model requires equivalence relations");
  Model out;
  out.worlds = m.worlds;
  out.order = Rel::identity(m.size());
  out.rel = m.rel;
  out.valuation = m.valuation;
  return out;
}

// --- JSON I/O ----------------------------------------------------------------
// {"worlds": [...], "order": [["w","v"],...], "relations": {"a": [...]},
//  "valuation": {"w": ["p",...]}}  — classical models omit "order".
// The loader treats "order" as generators: it adds the reflexive-transitive
// closure and rejects antisymmetry violations.

inline nlohmann::json model_to_json(const Model& m) {
  nlohmann::json j;
  j["worlds"] = m.worlds;
  auto& ord = j["order"] = nlohmann::json::array();
  for (int i = 0; i < m.size(); ++i)
    for (int k = 0; k < m.size(); ++k)
      if (m.order.at(i, k)) ord.push_back({m.worlds[i], m.worlds[k]});
  auto& rel = j["relations"] = nlohmann::json::object();
  for (const auto& [a, ra] : m.rel) {
    auto& arr = rel[a] = nlohmann::json::array();
    for (int i = 0; i < m.size(); ++i)
      for (int k = 0; k < m.size(); ++k)
        if (ra.at(i, k)) arr.push_back({m.worlds[i], m.worlds[k]});
  }
  auto& val = j["valuation"] = nlohmann::json::object();
  for (int i = 0; i < m.size(); ++i) val[m.worlds[i]] = m.valuation[i];
  return j;
}

inline nlohmann::json model_to_json(const ClassicalModel& m) {
  nlohmann::json j;
  j["worlds"] = m.worlds;
  auto& rel = j["relations"] = nlohmann::json::object();
  for (const auto& [a, ra] : m.rel) {
    auto& arr = rel[a] = nlohmann::json::array();
    for (int i = 0; i < m.size(); ++i)
      for (int k = 0; k < m.size(); ++k)
        if (ra.at(i, k)) arr.push_back({m.worlds[i], m.worlds[k]});
  }
  auto& val = j["valuation"] = nlohmann::json::object();
  for (int i = 0; i < m.size(); ++i) val[m.worlds[i]] = m.valuation[i];
  return j;
}

inline Model model_from_json(const nlohmann::json& j) {
  Model m;
  for (const auto& w : j.at("worlds")) m.worlds.push_back(w.get<std::string>());
  const int n = m.size();
  if (n == 0) throw std::invalid_argument("model needs at least one world");
  Rel gen(n);
  if (j.contains("order"))
    for (const auto& pair : j.at("order"))
      gen.at(m.world_index(pair.at(0).get<std::string>()),
             m.world_index(pair.at(1).get<std::string>())) = 1;
  m.order = gen.reflexive_transitive_closure();
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      if (i != k && m.order.at(i, k) && m.order.at(k, i))
        throw std::invalid_argument("order has a cycle through '" + m.worlds[i] + "'");
  if (j.contains("relations"))
    for (auto it = j.at("relations").begin(); it != j.at("relations").end(); ++it) {
      Rel r(n);
      for (const auto& pair : it.value())
        r.at(m.world_index(pair.at(0).get<std::string>()),
             m.world_index(pair.at(1).get<std::string>())) = 1;
      m.rel[it.key()] = r;
    }
  m.valuation.assign(n, {});
  if (j.contains("valuation"))
    for (auto it = j.at("valuation").begin(); it != j.at("valuation").end(); ++it) {
      auto& atoms = m.valuation[m.world_index(it.key())];
      for (const auto& p : it.value()) atoms.push_back(p.get<std::string>());
    }
  return m;
}

inline ClassicalModel classical_from_json(const nlohmann::json& j) {
  ClassicalModel m;
  for (const auto& w : j.at("worlds")) m.worlds.push_back(w.get<std::string>());
  const int n = m.size();
  if (n == 0) throw std::invalid_argument("model needs at least one world");
  if (j.contains("relations"))
    for (auto it = j.at("relations").begin(); it != j.at("relations").end(); ++it) {
      Rel r(n);
      for (const auto& pair : it.value())
        r.at(m.world_index(pair.at(0).get<std::string>()),
             m.world_index(pair.at(1).get<std::string>())) = 1;
      m.rel[it.key()] = r;
    }
  m.valuation.assign(n, {});
  if (j.contains("valuation"))
    for (auto it = j.at("valuation").begin(); it != j.at("valuation").end(); ++it) {
      auto& atoms = m.valuation[m.world_index(it.key())];
      for (const auto& p : it.value()) atoms.push_back(p.get<std::string>());
    }
  return m;
}

}  // namespace ick

#endif  // ICK_MODEL_HPP
