#include "quoric/cli_run.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "quoric/cech.hpp"
#include "quoric/char_functor.hpp"
#include "quoric/io.hpp"
#include "quoric/reps.hpp"

namespace quoric::cli {

namespace {

using ojson = nlohmann::ordered_json;
using io::json;

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

// Clamp every float in the report to 12 significant digits so both renderers
// emit identical values run to run.
void quantize(ojson& j) {
  if (j.is_structured()) {
    for (auto& e : j) quantize(e);
  } else if (j.is_number_float()) {
    double x = j.get<double>();
    if (x == 0) x = 0.0;  // drop the sign of -0
    j = std::stod(format_real(x));
  }
}

bool is_scalar(const ojson& v) { return !v.is_structured(); }

bool inlineable(const ojson& v) {
  if (!v.is_array() || v.empty()) return false;
  for (const auto& e : v)
    if (e.is_structured()) return false;
  return true;
}

std::string scalar_str(const ojson& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_float()) return format_real(v.get<double>());
  if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  return "null";
}

std::string inline_str(const ojson& v) {
  std::string s = "[";
  bool first = true;
  for (const auto& e : v) {
    if (!first) s += ", ";
    s += scalar_str(e);
    first = false;
  }
  return s + "]";
}

void render_text(std::ostream& os, const ojson& j, int indent);

void render_field(std::ostream& os, const std::string& lead, int next_indent,
                  const std::string& key, const ojson& v) {
  if (is_scalar(v)) {
    os << lead << key << ": " << scalar_str(v) << "\n";
  } else if (v.empty()) {
    os << lead << key << ": " << (v.is_array() ? "[]" : "{}") << "\n";
  } else if (inlineable(v)) {
    os << lead << key << ": " << inline_str(v) << "\n";
  } else {
    os << lead << key << ":\n";
    render_text(os, v, next_indent);
  }
}

void render_text(std::ostream& os, const ojson& j, int indent) {
  std::string pad(indent, ' ');
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      render_field(os, pad, indent + 2, it.key(), it.value());
  } else if (j.is_array()) {
    for (const auto& e : j) {
      if (is_scalar(e)) {
        os << pad << "- " << scalar_str(e) << "\n";
      } else if (e.empty()) {
        os << pad << "- " << (e.is_array() ? "[]" : "{}") << "\n";
      } else if (inlineable(e)) {
        os << pad << "- " << inline_str(e) << "\n";
      } else if (e.is_object()) {
        bool first = true;
        for (auto it = e.begin(); it != e.end(); ++it) {
          render_field(os, first ? pad + "- " : pad + "  ", indent + 4, it.key(),
                       it.value());
          first = false;
        }
      } else {
        os << pad << "-\n";
        render_text(os, e, indent + 2);
      }
    }
  } else {
    os << pad << scalar_str(j) << "\n";
  }
}

std::string simplex_names(const FaceComplex& k, Mask m) {
  if (m == 0) return "(interior)";
  std::string s;
  for (int i : indices_of(m)) {
    if (!s.empty()) s += ",";
    s += k.facet_names[i - 1];
  }
  return s;
}

std::string class_string(const ConjClass& c) {
  if (c.sets.empty()) return "trivial";
  std::string s;
  for (Mask g : c.sets) {
    if (!s.empty()) s += ",";
    s += mask_to_string(g);
  }
  return s;
}

double identity_distance(const GroupElement& g) {
  double worst = 0;
  for (const auto& q : g.coords)
    worst = std::max(worst, distance(q, Quaternion::one()));
  return worst;
}

ojson class_rows(const CharacteristicPair& p) {
  ojson rows = ojson::array();
  for (const auto& [mask, cls] : p.functor.table) {
    if (mask == 0) continue;
    ojson row;
    row["simplex"] = simplex_names(p.complex, mask);
    row["class"] = class_string(cls);
    rows.push_back(row);
  }
  return rows;
}

int run_validate(const JobConfig& cfg, const json& in, ojson& report) {
  (void)cfg;
  CharacteristicPair p = io::parse_pair(in);
  NicenessReport nice = validate_nice(p.complex);
  FunctorReport fr = validate_functor(p);

  ojson cx;
  cx["n"] = p.complex.corner_dim;
  cx["facets"] = p.complex.facet_count();
  cx["faces"] = static_cast<int>(p.complex.simplices.size());
  cx["homotopy_polytope"] = p.complex.homotopy_polytope;
  cx["nice"] = nice.valid;
  cx["violations"] = nice.violations;
  report["complex"] = cx;

  ojson fn;
  fn["ambient"] = p.functor.ambient;
  fn["assignments"] = class_rows(p);
  fn["valid"] = fr.valid;
  fn["violations"] = fr.violations;
  report["functor"] = fn;

  bool ok = nice.valid && fr.valid;
  report["verdict"] = ok ? "valid" : "invalid";
  return ok ? 0 : 1;
}

int run_enumerate(const JobConfig& cfg, const json& in, ojson& report) {
  if (!in.is_object()) throw input_error("enumerate: expected an object input");
  auto it = in.find("complex");
  if (it == in.end()) throw input_error("enumerate: missing field 'complex'");
  FaceComplex k = io::parse_complex(*it);
  int ambient = k.corner_dim;
  if (auto a = in.find("ambient"); a != in.end()) {
    if (!a->is_number_integer()) throw input_error("enumerate.ambient: expected an integer");
    ambient = a->get<int>();
  }
  NicenessReport nice = validate_nice(k);
  if (!nice.valid)
    throw input_error("enumerate: complex is not nice: " + nice.violations.front());

  std::vector<CharFunctor> census = enumerate_functors(k, ambient, cfg.max_candidates);

  std::vector<std::pair<std::string, const CharFunctor*>> keyed;
  keyed.reserve(census.size());
  for (const auto& f : census) keyed.push_back({canonical_form(k, f), &f});
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  report["n"] = k.corner_dim;
  report["ambient"] = ambient;
  report["count"] = static_cast<std::uint64_t>(census.size());
  ojson rows = ojson::array();
  for (const auto& [canon, f] : keyed) {
    ojson row;
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(census_hash(canon)));
    row["hash"] = std::string(buf);
    std::string labels;
    for (int i = 0; i < k.facet_count(); ++i) {
      Mask facet = Mask{1} << i;
      auto entry = f->table.find(facet);
      if (!labels.empty()) labels += " ";
      labels += entry == f->table.end() ? "?" : class_string(entry->second);
    }
    row["facet_labels"] = labels;
    rows.push_back(row);
  }
  report["census"] = rows;
  return 0;
}

int run_rigidity(const JobConfig& cfg, const json& in, ojson& report) {
  if (!in.is_object()) throw input_error("rigidity: expected an object input");
  auto l = in.find("left"), r = in.find("right");
  if (l == in.end() || r == in.end())
    throw input_error("rigidity: expected fields 'left' and 'right'");
  CharacteristicPair left = io::parse_pair(*l);
  CharacteristicPair right = io::parse_pair(*r);
  for (const auto* side : {&left, &right}) {
    NicenessReport nice = validate_nice(side->complex);
    FunctorReport fr = validate_functor(*side);
    if (!nice.valid || !fr.valid) {
      const auto& v = nice.valid ? fr.violations : nice.violations;
      throw input_error(std::string("rigidity: ") +
                        (side == &left ? "left" : "right") +
                        " pair is invalid: " + (v.empty() ? "unspecified" : v.front()));
    }
  }
  bool weak = false;
  if (auto w = in.find("weak"); w != in.end()) {
    if (!w->is_boolean()) throw input_error("rigidity.weak: expected a boolean");
    weak = w->get<bool>();
  }

  EquivalenceResult res = weak
                              ? weak_equivalence_search(left, right, cfg.max_candidates)
                              : equivalence_search(left, right, cfg.max_candidates);

  report["mode"] = weak ? "weak" : "exact";
  report["equivalent"] = res.facet_map.has_value();
  if (res.facet_map) {
    // psi maps facets of the right complex to facets of the left one
    ojson psi = ojson::array();
    for (int i = 0; i < right.complex.facet_count(); ++i) {
      ojson step;
      step["from"] = right.complex.facet_names[i];
      step["to"] = left.complex.facet_names[(*res.facet_map)[i]];
      psi.push_back(step);
    }
    report["psi"] = psi;
    if (res.coordinate_permutation) {
      ojson perm = ojson::array();
      for (int v : *res.coordinate_permutation) perm.push_back(v);
      report["coordinate_permutation"] = perm;
    }
  }
  report["nodes_explored"] = res.nodes_explored;
  return res.facet_map ? 0 : 1;
}

ojson holonomy_rows(const std::vector<cech::ChordHolonomy>& obs) {
  ojson rows = ojson::array();
  for (const auto& o : obs) {
    ojson row;
    row["chord"] = ojson::array({o.chord.first, o.chord.second});
    row["holonomy"] = ojson(io::group_element_json(o.holonomy));
    rows.push_back(row);
  }
  return rows;
}

int run_cech(const JobConfig& cfg, const json& in, ojson& report) {
  if (!in.is_object()) throw input_error("cech: expected an object input");
  auto nj = in.find("nerve");
  if (nj == in.end()) throw input_error("cech: missing field 'nerve'");
  cech::Nerve nerve = io::parse_nerve(*nj);
  auto rj = in.find("rank");
  if (rj == in.end() || !rj->is_number_integer())
    throw input_error("cech: missing integer field 'rank'");
  int rank = rj->get<int>();
  if (rank < 1) throw input_error("cech.rank: must be positive");
  auto vj = in.find("values");
  if (vj == in.end()) throw input_error("cech: missing field 'values'");
  cech::Cochain1 theta = io::parse_cochain(*vj, nerve, rank);

  report["patches"] = nerve.patch_count;
  report["edges"] = static_cast<int>(nerve.edges.size());
  report["triples"] = static_cast<int>(nerve.triples.size());
  report["rank"] = rank;

  cech::CocycleReport coc = cech::verify_cocycle(nerve, theta, cfg.tolerance);
  report["cocycle"] = coc.valid;
  if (!coc.valid) {
    ojson rows = ojson::array();
    for (const auto& v : coc.violations) {
      ojson row;
      row["triple"] = ojson::array({v.triple[0], v.triple[1], v.triple[2]});
      row["residual"] = v.residual;
      rows.push_back(row);
    }
    report["cocycle_violations"] = rows;
    report["verdict"] = "not a cocycle";
    return 1;
  }

  cech::TrivializeResult tr = cech::trivialize(nerve, theta, cfg.tolerance);
  ojson tree = ojson::array();
  for (auto [a, b] : tr.tree_edges) tree.push_back(ojson::array({a, b}));
  report["tree_edges"] = tree;
  report["trivial"] = tr.gauge.has_value();

  if (!tr.gauge) {
    report["obstructions"] = holonomy_rows(tr.obstructions);
    report["verdict"] = "obstruction";
    return 1;
  }

  ojson gauge = ojson::array();
  for (const auto& g : tr.gauge->values) gauge.push_back(ojson(io::group_element_json(g)));
  report["gauge"] = gauge;
  double worst = 0;
  for (auto [a, b] : nerve.edges) {
    GroupElement res = tr.gauge->values[a] * theta.theta(a, b) * tr.gauge->values[b].inverse();
    worst = std::max(worst, identity_distance(res));
  }
  report["max_edge_residual"] = worst;

  if (auto sj = in.find("section"); sj != in.end()) {
    if (!sj->is_object() || !sj->contains("pair") || !sj->contains("patch_faces"))
      throw input_error("cech.section: expected fields 'pair' and 'patch_faces'");
    CharacteristicPair p = io::parse_pair((*sj)["pair"]);
    const json& pf = (*sj)["patch_faces"];
    if (!pf.is_array() || static_cast<int>(pf.size()) != nerve.patch_count)
      throw input_error("cech.section.patch_faces: expected one face per patch");
    cech::Cover cover;
    cover.nerve = nerve;
    for (const auto& face : pf) {
      if (!face.is_array())
        throw input_error("cech.section.patch_faces: expected facet-name lists");
      Mask m = 0;
      for (const auto& name : face) {
        if (!name.is_string())
          throw input_error("cech.section.patch_faces: expected facet names");
        int idx = p.complex.facet_index(name.get<std::string>());
        if (idx < 0)
          throw input_error("cech.section.patch_faces: unknown facet '" +
                            name.get<std::string>() + "'");
        m |= Mask{1} << idx;
      }
      if (!p.complex.contains(m))
        throw input_error("cech.section.patch_faces: " + mask_to_string(m) +
                          " is not a face");
      cover.patch_face.push_back(m);
    }
    cech::SectionTable st =
        cech::section_from_trivialization(p, cover, theta, *tr.gauge, cfg.tolerance);
    ojson sec;
    ojson values = ojson::array();
    for (int i = 0; i < nerve.patch_count; ++i) {
      ojson row;
      row["patch"] = i;
      row["face"] = simplex_names(p.complex, st.faces[i]);
      row["value"] = ojson(io::group_element_json(st.values[i]));
      values.push_back(row);
    }
    sec["values"] = values;
    sec["max_residual"] = st.max_residual;
    report["section"] = sec;
  }

  report["verdict"] = "trivial";
  return 0;
}

int run_reps(const JobConfig& cfg, const json& in, ojson& report) {
  if (!in.is_object()) throw input_error("reps: expected an object input");
  auto rj = in.find("rep");
  if (rj == in.end()) throw input_error("reps: missing field 'rep'");
  reps::RepExpr rho = io::parse_rep(*rj);

  report["n"] = rho.n;
  report["dimension"] = static_cast<std::uint64_t>(rho.dim());
  ojson terms = ojson::array();
  for (const auto& t : rho.terms) {
    std::string s;
    for (const auto& f : t.factors) {
      if (!s.empty()) s += " x ";
      std::string fs;
      for (int m : f.weights) {
        if (!fs.empty()) fs += "*";
        fs += "V" + std::to_string(m);
      }
      s += fs;
    }
    terms.push_back(s);
  }
  report["terms"] = terms;

  auto table = reps::decompose(rho);
  ojson rows = ojson::array();
  for (const auto& [labels, mult] : table) {
    ojson row;
    ojson lab = ojson::array();
    int weight_sum = 0;
    for (int m : labels) {
      lab.push_back(m);
      weight_sum += m;
    }
    row["labels"] = lab;
    row["multiplicity"] = mult;
    row["type"] = weight_sum % 2 == 0 ? "real" : "quaternionic";
    rows.push_back(row);
  }
  report["decomposition"] = rows;

  bool irreducible = rho.terms.size() == 1;
  for (const auto& f : rho.terms[0].factors)
    if (f.weights.size() != 1) irreducible = false;
  if (irreducible)
    report["frobenius_schur"] = reps::fs_indicator(rho);
  else
    report["frobenius_schur"] = "n/a (reducible)";

  if (auto vj = in.find("vectors"); vj != in.end()) {
    if (!vj->is_array()) throw input_error("reps.vectors: expected an array");
    ojson stab = ojson::array();
    for (const auto& entry : *vj) {
      if (!entry.is_object() || !entry.contains("name"))
        throw input_error("reps.vectors: expected objects with a 'name'");
      reps::CVector v;
      bool has_value = entry.contains("value");
      bool has_basis = entry.contains("basis_index");
      if (has_value == has_basis)
        throw input_error("reps.vectors: give exactly one of 'value', 'basis_index'");
      if (has_value) {
        v = io::parse_cvector(entry["value"], rho.dim());
      } else {
        const json& bi = entry["basis_index"];
        if (!bi.is_number_integer()) throw input_error("reps.vectors.basis_index: integer");
        long i = bi.get<long>();
        if (i < 0 || i >= rho.dim())
          throw input_error("reps.vectors.basis_index: out of range");
        v = reps::CVector::Zero(rho.dim());
        v(i) = 1.0;
      }
      reps::StabilizerReport sr = reps::stabilizer_algebra(rho, v, cfg.tolerance);
      ojson row;
      row["name"] = entry["name"].is_string() ? entry["name"].get<std::string>()
                                              : entry["name"].dump();
      row["algebra_dimension"] = sr.algebra_dim;
      row["line_dimension"] = sr.line_dim;
      row["closed_under_bracket"] = sr.closed_under_bracket;
      row["abelian"] = sr.abelian;
      row["standard"] = sr.is_standard;
      if (sr.standard_m)
        row["standard_m"] = *sr.standard_m;
      else
        row["standard_m"] = nullptr;
      if (rho.dim() <= 16) {
        ojson tc = ojson::array();
        for (int c = 0; c < rho.n; ++c)
          tc.push_back(reps::torus_components(rho, v, c, 8, cfg.tolerance));
        row["torus_components"] = tc;
      }
      stab.push_back(row);
    }
    report["stabilizers"] = stab;
  }
  return 0;
}

}  // namespace

int run(const JobConfig& cfg, std::ostream& out) {
  ojson report;
  report["command"] = cfg.command;
  report["input"] = cfg.input_path;
  report["tolerance"] = cfg.tolerance;
  report["seed"] = cfg.seed;

  int code = 0;
  auto fail = [&](const char* status, const std::string& what, int exit_code) {
    ojson err;
    err["command"] = cfg.command;
    err["input"] = cfg.input_path;
    err["status"] = status;
    err["error"] = what;
    report = err;
    code = exit_code;
  };

  try {
    if (cfg.tolerance <= 0) throw input_error("tolerance must be positive");
    if (cfg.format != "text" && cfg.format != "json-like")
      throw input_error("unknown format: " + cfg.format);
    json in = io::load_json_file(cfg.input_path);
    if (cfg.command == "validate")
      code = run_validate(cfg, in, report);
    else if (cfg.command == "enumerate")
      code = run_enumerate(cfg, in, report);
    else if (cfg.command == "rigidity")
      code = run_rigidity(cfg, in, report);
    else if (cfg.command == "cech")
      code = run_cech(cfg, in, report);
    else if (cfg.command == "reps")
      code = run_reps(cfg, in, report);
    else
      throw input_error("unknown command: " + cfg.command);
  } catch (const size_guard_error& e) {
    fail("size-guard refusal", e.what(), 3);
  } catch (const input_error& e) {
    fail("input error", e.what(), 2);
  } catch (const numeric_error& e) {
    fail("numeric failure", e.what(), 2);
  } catch (const std::exception& e) {
    fail("input error", e.what(), 2);
  }

  report["exit"] = code;
  quantize(report);

  std::ostringstream rendered;
  if (cfg.format == "json-like") {
    rendered << report.dump(2) << "\n";
  } else {
    render_text(rendered, report, 0);
  }
  out << rendered.str();
  if (!cfg.output_path.empty()) {
    std::ofstream f(cfg.output_path);
    if (!f) {
      out << "cannot write output file: " << cfg.output_path << "\n";
      return 2;
    }
    f << rendered.str();
  }
  return code;
}

}  // namespace quoric::cli
