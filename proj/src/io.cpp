#include "quoric/io.hpp"

#include <fstream>
#include <map>
#include <set>

namespace quoric::io {

namespace {

const json& need(const json& j, const char* key, const char* where) {
  auto it = j.find(key);
  if (it == j.end())
    throw input_error(std::string(where) + ": missing field '" + key + "'");
  return *it;
}

int need_int(const json& j, const char* where) {
  if (!j.is_number_integer())
    throw input_error(std::string(where) + ": expected an integer");
  return j.get<int>();
}

double need_real(const json& j, const char* where) {
  if (!j.is_number())
    throw input_error(std::string(where) + ": expected a number");
  return j.get<double>();
}

}  // namespace

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open input file: " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw input_error(std::string("JSON parse failure: ") + e.what());
  }
}

Quaternion parse_quaternion(const json& j) {
  if (!j.is_array() || j.size() != 4)
    throw input_error("quaternion: expected [a, b, c, d]");
  Quaternion q{need_real(j[0], "quaternion"), need_real(j[1], "quaternion"),
               need_real(j[2], "quaternion"), need_real(j[3], "quaternion")};
  return q;
}

GroupElement parse_group_element(const json& j) {
  if (!j.is_array() || j.empty())
    throw input_error("group element: expected a nonempty array of quaternions");
  GroupElement g;
  for (const auto& entry : j) {
    Quaternion q = parse_quaternion(entry);
    if (!is_unit(q, 1e-6))
      throw input_error("group element: coordinate is not a unit quaternion");
    g.coords.push_back(q);
  }
  return g;
}

ConjClass parse_class(const json& j, int ambient) {
  if (!j.is_array()) throw input_error("class: expected a list of index lists");
  std::vector<std::vector<int>> sets;
  for (const auto& s : j) {
    if (!s.is_array()) throw input_error("class: expected a list of index lists");
    std::vector<int> idx;
    for (const auto& e : s) idx.push_back(need_int(e, "class index"));
    sets.push_back(std::move(idx));
  }
  try {
    return make_class_indices(ambient, sets);
  } catch (const domain_error& e) {
    throw input_error(std::string("class: ") + e.what());
  }
}

FaceComplex parse_complex(const json& j) {
  if (!j.is_object()) throw input_error("complex: expected an object");
  int n = need_int(need(j, "n", "complex"), "complex.n");
  const json& facets = need(j, "facets", "complex");
  if (!facets.is_array()) throw input_error("complex.facets: expected an array");
  std::vector<std::string> names;
  std::map<std::string, int> index;
  for (const auto& f : facets) {
    if (!f.is_string()) throw input_error("complex.facets: expected strings");
    std::string name = f.get<std::string>();
    if (!index.emplace(name, static_cast<int>(names.size())).second)
      throw input_error("complex.facets: duplicate facet '" + name + "'");
    names.push_back(name);
  }
  const json& maximal = need(j, "maximal_simplices", "complex");
  if (!maximal.is_array())
    throw input_error("complex.maximal_simplices: expected an array");
  std::vector<Mask> masks;
  for (const auto& simplex : maximal) {
    if (!simplex.is_array())
      throw input_error("complex.maximal_simplices: expected facet-name lists");
    Mask m = 0;
    for (const auto& f : simplex) {
      if (!f.is_string())
        throw input_error("complex.maximal_simplices: expected facet names");
      auto it = index.find(f.get<std::string>());
      if (it == index.end())
        throw input_error("complex.maximal_simplices: unknown facet '" +
                          f.get<std::string>() + "'");
      m |= Mask{1} << it->second;
    }
    masks.push_back(m);
  }
  bool polytope = true;
  if (auto it = j.find("homotopy_polytope"); it != j.end()) {
    if (!it->is_boolean())
      throw input_error("complex.homotopy_polytope: expected a boolean");
    polytope = it->get<bool>();
  }
  try {
    return FaceComplex::from_maximal(n, std::move(names), masks, polytope);
  } catch (const domain_error& e) {
    throw input_error(std::string("complex: ") + e.what());
  }
}

CharacteristicPair parse_pair(const json& j) {
  if (!j.is_object()) throw input_error("pair: expected an object");
  CharacteristicPair p;
  p.complex = parse_complex(need(j, "complex", "pair"));
  int ambient = p.complex.corner_dim;
  if (auto it = j.find("ambient"); it != j.end()) ambient = need_int(*it, "pair.ambient");
  if (ambient < 1) throw input_error("pair.ambient: must be positive");
  p.functor.ambient = ambient;
  p.functor.table[0] = ConjClass::trivial(ambient);
  const json& classes = need(j, "classes", "pair");
  if (!classes.is_array()) throw input_error("pair.classes: expected an array");
  for (const auto& entry : classes) {
    if (!entry.is_object())
      throw input_error("pair.classes: expected {simplex, class} objects");
    const json& simplex = need(entry, "simplex", "pair.classes");
    if (!simplex.is_array())
      throw input_error("pair.classes.simplex: expected facet names");
    Mask m = 0;
    for (const auto& f : simplex) {
      if (!f.is_string()) throw input_error("pair.classes.simplex: expected facet names");
      int idx = p.complex.facet_index(f.get<std::string>());
      if (idx < 0)
        throw input_error("pair.classes.simplex: unknown facet '" +
                          f.get<std::string>() + "'");
      m |= Mask{1} << idx;
    }
    if (!p.complex.contains(m))
      throw input_error("pair.classes: simplex " + mask_to_string(m) +
                        " is not a face of the complex");
    p.functor.table[m] = parse_class(need(entry, "class", "pair.classes"), ambient);
  }
  return p;
}

cech::Nerve parse_nerve(const json& j) {
  if (!j.is_object()) throw input_error("nerve: expected an object");
  int patches = need_int(need(j, "patches", "nerve"), "nerve.patches");
  const json& edges = need(j, "edges", "nerve");
  if (!edges.is_array()) throw input_error("nerve.edges: expected an array");
  std::vector<std::pair<int, int>> edge_list;
  for (const auto& e : edges) {
    if (!e.is_array() || e.size() != 2)
      throw input_error("nerve.edges: expected [a, b] pairs");
    edge_list.push_back({need_int(e[0], "nerve.edges"), need_int(e[1], "nerve.edges")});
  }
  std::vector<std::array<int, 3>> triple_list;
  if (auto it = j.find("triples"); it != j.end()) {
    if (!it->is_array()) throw input_error("nerve.triples: expected an array");
    for (const auto& t : *it) {
      if (!t.is_array() || t.size() != 3)
        throw input_error("nerve.triples: expected [a, b, c] triples");
      triple_list.push_back({need_int(t[0], "nerve.triples"),
                             need_int(t[1], "nerve.triples"),
                             need_int(t[2], "nerve.triples")});
    }
  } else {
    // default: every triangle of the overlap graph
    std::set<std::pair<int, int>> have;
    for (auto [a, b] : edge_list) have.insert({std::min(a, b), std::max(a, b)});
    for (auto [a, b] : have)
      for (int c = b + 1; c < patches; ++c)
        if (have.count({a, c}) && have.count({b, c})) triple_list.push_back({a, b, c});
  }
  try {
    return cech::Nerve::make(patches, std::move(edge_list), std::move(triple_list));
  } catch (const domain_error& e) {
    throw input_error(std::string("nerve: ") + e.what());
  }
}

cech::Cochain1 parse_cochain(const json& j, const cech::Nerve& n, int rank) {
  if (!j.is_array()) throw input_error("values: expected an array of edge entries");
  cech::Cochain1 theta;
  theta.rank = rank;
  for (const auto& entry : j) {
    if (!entry.is_object()) throw input_error("values: expected {edge, element} objects");
    const json& e = need(entry, "edge", "values");
    if (!e.is_array() || e.size() != 2)
      throw input_error("values.edge: expected [a, b]");
    int a = need_int(e[0], "values.edge");
    int b = need_int(e[1], "values.edge");
    if (!n.has_edge(a, b))
      throw input_error("values.edge: [" + std::to_string(a) + ", " +
                        std::to_string(b) + "] is not an overlap of the nerve");
    GroupElement g = parse_group_element(need(entry, "element", "values"));
    if (g.rank() != rank) throw input_error("values.element: rank mismatch");
    theta.set(a, b, std::move(g));
  }
  return theta;
}

reps::RepExpr parse_rep(const json& j) {
  if (!j.is_object()) throw input_error("rep: expected an object");
  reps::RepExpr rho;
  rho.n = need_int(need(j, "n", "rep"), "rep.n");
  if (rho.n < 1 || rho.n > 21) throw input_error("rep.n: out of range");
  const json& terms = need(j, "terms", "rep");
  if (!terms.is_array() || terms.empty())
    throw input_error("rep.terms: expected a nonempty array");
  for (const auto& term : terms) {
    if (!term.is_array() || static_cast<int>(term.size()) != rho.n)
      throw input_error("rep.terms: each term needs one entry per coordinate");
    reps::Term t;
    for (const auto& entry : term) {
      reps::Factor f;
      if (entry.is_number_integer()) {
        f.weights.push_back(entry.get<int>());
      } else if (entry.is_array()) {
        for (const auto& m : entry) f.weights.push_back(need_int(m, "rep.terms"));
      } else {
        throw input_error("rep.terms: entries are labels m or label lists");
      }
      for (int m : f.weights)
        if (m < 0 || m > 60) throw input_error("rep.terms: label out of range");
      t.factors.push_back(std::move(f));
    }
    rho.terms.push_back(std::move(t));
  }
  if (rho.dim() > 4096) throw input_error("rep: dimension too large");
  return rho;
}

reps::CVector parse_cvector(const json& j, long dim) {
  if (!j.is_array() || static_cast<long>(j.size()) != dim)
    throw input_error("vector: expected " + std::to_string(dim) + " coefficients");
  reps::CVector v(dim);
  for (long i = 0; i < dim; ++i) {
    const json& e = j[i];
    if (e.is_number()) {
      v(i) = std::complex<double>(e.get<double>(), 0.0);
    } else if (e.is_array() && e.size() == 2) {
      v(i) = std::complex<double>(need_real(e[0], "vector"), need_real(e[1], "vector"));
    } else {
      throw input_error("vector: entries are reals or [re, im] pairs");
    }
  }
  return v;
}

json quaternion_json(const Quaternion& q) {
  return json::array({q.a, q.b, q.c, q.d});
}

json group_element_json(const GroupElement& g) {
  json out = json::array();
  for (const auto& q : g.coords) out.push_back(quaternion_json(q));
  return out;
}

json class_json(const ConjClass& c) {
  json out = json::array();
  for (Mask s : c.sets) {
    json set = json::array();
    for (int i : indices_of(s)) set.push_back(i);
    out.push_back(set);
  }
  return out;
}

json complex_json(const FaceComplex& k) {
  json out;
  out["n"] = k.corner_dim;
  out["facets"] = k.facet_names;
  json maximal = json::array();
  for (Mask m : k.maximal_simplices()) {
    json simplex = json::array();
    for (int i : indices_of(m)) simplex.push_back(k.facet_names[i - 1]);
    maximal.push_back(simplex);
  }
  out["maximal_simplices"] = maximal;
  out["homotopy_polytope"] = k.homotopy_polytope;
  return out;
}

json pair_json(const CharacteristicPair& p) {
  json out;
  out["complex"] = complex_json(p.complex);
  out["ambient"] = p.functor.ambient;
  json classes = json::array();
  for (const auto& [mask, cls] : p.functor.table) {
    if (mask == 0) continue;
    json entry;
    json simplex = json::array();
    for (int i : indices_of(mask)) simplex.push_back(p.complex.facet_names[i - 1]);
    entry["simplex"] = simplex;
    entry["class"] = class_json(cls);
    classes.push_back(entry);
  }
  out["classes"] = classes;
  return out;
}

}  // namespace quoric::io
