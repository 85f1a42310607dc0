#include "bjg/report.hpp"

#include <cstdint>
#include <cstdio>

namespace bjg {

Json scalar_json(Scalar z, Field field) {
  if (field == Field::Real) return z.real();
  return Json::array({z.real(), z.imag()});
}

Json matrix_json(const OperatorMatrix& t) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < t.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < t.cols(); ++j) row.push_back(scalar_json(t.at(i, j), t.field()));
    rows.push_back(std::move(row));
  }
  return Json{{"rows", t.rows()}, {"cols", t.cols()}, {"field", to_string(t.field())}, {"entries", rows}};
}

Json point_json(const Point& x, Field field) {
  Json out = Json::array();
  for (const auto& z : x) out.push_back(scalar_json(z, field));
  return out;
}

Json membership_json(const HullMembership& h) {
  Json out{{"contains_zero", h.contains_zero}, {"gap", h.gap}};
  out["combiner"] = h.combiner ? Json(h.combiner->weights) : Json(nullptr);
  return out;
}

Json norming_json(const NormingSet& ns, Field field) {
  Json reps = Json::array();
  for (const auto& x : ns.representatives) reps.push_back(point_json(x, field));
  return Json{{"norm", ns.norm}, {"approximate", ns.approximate}, {"representatives", reps}};
}

Json orthogonality_json(const OperatorOrthogonality& o, Field field) {
  Json atoms = Json::array();
  for (std::size_t k = 0; k < o.atoms.size(); ++k) {
    atoms.push_back(Json{{"point", o.atom_point[k]},
                         {"center", scalar_json(o.atoms[k].center, field)},
                         {"radius", o.atoms[k].radius}});
  }
  return Json{{"orthogonal", o.orthogonal},
              {"approximate", o.approximate},
              {"norming", norming_json(o.norming, field)},
              {"atoms", atoms},
              {"membership", membership_json(o.membership)}};
}

Json extremality_json(const ExtremalityCertificate& cert, const OperatorMatrix& t) {
  Json out{{"verdict", to_string(cert.verdict)},
           {"norm", cert.norm},
           {"approximate", cert.approximate},
           {"exact_resolve_used", cert.exact_resolve_used},
           {"directional_maxima", cert.directional_maxima}};
  if (cert.perturbation) {
    out["perturbation"] = matrix_json(*cert.perturbation);
    const auto [plus, minus] = decompose_midpoint(cert, t);
    out["midpoint"] = Json{{"plus", matrix_json(plus)}, {"minus", matrix_json(minus)}};
  } else {
    out["perturbation"] = nullptr;
  }
  return out;
}

Json witness_json(const WitnessReport& report) {
  const Field field = report.subject.field();
  Json schedule = Json::array();
  for (const auto& step : report.delta_schedule) schedule.push_back(Json{{"delta", step.delta}, {"isolated", step.isolated}});
  Json out{{"direction", to_string(report.direction)},
           {"path", to_string(report.path)},
           {"witness", matrix_json(report.witness)},
           {"subject_orthogonal_to_witness", orthogonality_json(report.subject_to_witness, field)},
           {"witness_orthogonal_to_subject", orthogonality_json(report.witness_to_subject, field)},
           {"delta", report.delta ? Json(*report.delta) : Json(nullptr)},
           {"ell", report.ell ? Json(*report.ell) : Json(nullptr)},
           {"delta_schedule", schedule},
           {"candidates_tried", report.candidates_tried},
           {"approximate", report.approximate}};
  if (report.permutation) {
    out["permutation"] = Json{{"source", report.permutation->source},
                              {"phase", point_json(report.permutation->phase, field)}};
  } else {
    out["permutation"] = nullptr;
  }
  return out;
}

Json pair_json(const SymmetryPair& pair, Field field) {
  return Json{{"relation", to_string(pair.relation)},
              {"first_orthogonal_to_second", orthogonality_json(pair.forward, field)},
              {"second_orthogonal_to_first", orthogonality_json(pair.backward, field)}};
}

Json vector_system_json(const VectorSystem& system) {
  return Json{{"dim", system.dim}, {"x", system.x}, {"y", system.y}};
}

Json grothendieck_json(const GrothendieckSearchResult& result) {
  return Json{{"best_value", result.best_value},
              {"best_operator", matrix_json(result.best_operator)},
              {"best_system", vector_system_json(result.best_system)},
              {"best_source", to_string(result.best_source)},
              {"best_ordinal", result.best_ordinal},
              {"candidates", result.candidates},
              {"extreme_candidates", result.extreme_candidates},
              {"restarts", result.restarts},
              {"iterations", result.iterations},
              {"seed", result.seed},
              {"budget_exhausted", result.budget_exhausted}};
}

std::string content_hash(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

bool is_flat(const Json& j) {
  if (!j.is_array()) return !j.is_object();
  for (const auto& e : j) {
    if (e.is_object()) return false;
    if (e.is_array()) {
      for (const auto& f : e)
        if (f.is_array() || f.is_object()) return false;
    }
  }
  return true;
}

void render(const Json& j, const std::string& indent, std::string& out) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string key = j.is_object() ? it.key() : "-";
    const Json& v = it.value();
    if (is_flat(v)) {
      out += indent + key + ": " + v.dump() + "\n";
    } else if (v.is_array() && !v.empty() && v.front().is_array() && is_flat(v.front())) {
      out += indent + key + ":\n";
      for (const auto& row : v) out += indent + "  " + row.dump() + "\n";
    } else {
      out += indent + key + ":\n";
      render(v, indent + "  ", out);
    }
  }
}

}  // namespace

std::string render_human(const Json& tree) {
  std::string out;
  render(tree, "", out);
  return out;
}

}  // namespace bjg
