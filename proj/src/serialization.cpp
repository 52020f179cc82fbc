#include "gadgetlab/serialization.hpp"

#include <set>
#include <string>

#include "gadgetlab/errors.hpp"

namespace gadgetlab {

using nlohmann::json;

json to_json(const LocalHamiltonian& h) {
  json terms = json::array();
  for (const auto& t : h.terms()) {
    json jt;
    jt["support"] = t.support;
    jt["label"] = t.label;
    if (t.pauli) {
      jt["pauli"] = t.pauli->letters;
      jt["coeff"] = t.pauli->coeff;
    } else {
      jt["pauli"] = nullptr;
      json m = json::array();
      for (Eigen::Index r = 0; r < t.op.rows(); ++r) {
        for (Eigen::Index c = 0; c < t.op.cols(); ++c) {
          m.push_back({t.op(r, c).real(), t.op(r, c).imag()});
        }
      }
      jt["matrix"] = std::move(m);
      jt["coeff"] = 1.0;
    }
    terms.push_back(std::move(jt));
  }
  return json{{"dims", h.layout().dims()}, {"terms", std::move(terms)}};
}

namespace {

void reject_unknown_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw InvalidInput(where + " must be an object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.contains(key)) throw InvalidInput("unknown key '" + key + "' in " + where);
  }
}

LocalTerm term_from_json(const json& jt, const SiteLayout& layout) {
  reject_unknown_keys(jt, {"support", "pauli", "matrix", "coeff", "label"}, "term");
  LocalTerm t;
  t.support = jt.at("support").get<std::vector<int>>();
  t.label = jt.value("label", std::string{});
  const double coeff = jt.value("coeff", 1.0);
  const bool has_pauli = jt.contains("pauli") && !jt["pauli"].is_null();
  const bool has_matrix = jt.contains("matrix") && !jt["matrix"].is_null();
  if (has_pauli == has_matrix) {
    throw InvalidInput("term '" + t.label + "' needs exactly one of pauli or matrix");
  }
  for (int s : t.support) {
    if (s < 0 || s >= layout.size()) throw InvalidInput("term support outside layout");
  }
  if (has_pauli) {
    const auto letters = jt["pauli"].get<std::string>();
    if (letters.size() != t.support.size()) throw InvalidInput("pauli length differs from support");
    Operator local = Operator::Identity(1, 1);
    for (char c : letters) local = kron(local, pauli_matrix(pauli_from_char(c)));
    t.op = coeff * local;
    t.pauli = PauliTag{letters, coeff};
  } else {
    const auto d = static_cast<Eigen::Index>(layout.subsystem_dim(t.support));
    const json& m = jt["matrix"];
    if (!m.is_array() || static_cast<Eigen::Index>(m.size()) != d * d) {
      throw InvalidInput("matrix must list " + std::to_string(d * d) + " [re,im] entries");
    }
    t.op = Operator(d, d);
    for (Eigen::Index k = 0; k < d * d; ++k) {
      const json& e = m[static_cast<std::size_t>(k)];
      if (!e.is_array() || e.size() != 2) throw InvalidInput("matrix entries must be [re,im]");
      t.op(k / d, k % d) = coeff * Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  return t;
}

}  // namespace

LocalHamiltonian local_hamiltonian_from_json(const json& j) {
  try {
    reject_unknown_keys(j, {"dims", "terms"}, "hamiltonian");
    LocalHamiltonian h(SiteLayout(j.at("dims").get<std::vector<int>>()));
    for (const json& jt : j.at("terms")) h.add_term(term_from_json(jt, h.layout()));
    return h;
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed Hamiltonian JSON: ") + e.what());
  }
}

json to_json(const GadgetInstance& g, const GadgetWitness* witness) {
  json j = to_json(g.gadget);
  j["target"] = to_json(g.target);
  j["ancilla_sites"] = g.ancilla_sites;
  j["delta"] = g.delta;
  if (witness) {
    j["witness"] = json{{"eta", witness->eta}, {"eps", witness->eps}};
    if (witness->delta) j["witness"]["delta"] = *witness->delta;
  }
  return j;
}

}  // namespace gadgetlab
