#include "stieltjes/measure_json.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace stieltjes {

namespace {

nlohmann::json endpoint_to_json(double x) {
  if (std::isinf(x)) return "inf";
  return x;
}

double endpoint_from_json(const nlohmann::json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return kInf;
    throw std::invalid_argument("measure json: bad interval endpoint \"" +
                                j.get<std::string>() + "\"");
  }
  return j.get<double>();
}

}  // namespace

nlohmann::json measure_to_json(const Measure& mu) {
  nlohmann::json j;
  j["atom_zero"] = mu.atom_zero();
  j["atom_infinity"] = mu.atom_infinity();
  j["atoms"] = nlohmann::json::array();
  for (const Atom& a : mu.atoms()) j["atoms"].push_back({a.location, a.mass});
  j["pieces"] = nlohmann::json::array();
  for (const auto& p : mu.pieces()) {
    if (!p.closed_form())
      throw std::domain_error(
          "measure json: generic density piece is not serializable");
    nlohmann::json jp;
    jp["interval"] = {endpoint_to_json(p.lo), endpoint_to_json(p.hi)};
    const bool single = p.terms.size() == 1;
    if (single && p.terms[0].p == 0.0 && p.terms[0].exp_left == 0.0 &&
        p.terms[0].exp_right == 0.0) {
      jp["form"] = "constant";
      jp["c"] = p.terms[0].coef;
    } else if (single && p.terms[0].exp_left == 0.0 &&
               (p.terms[0].exp_right == 0.0 ||
                p.terms[0].anchor_right == p.hi)) {
      jp["form"] = "power";
      jp["c"] = p.terms[0].coef;
      jp["p"] = p.terms[0].p;
      jp["q"] = p.terms[0].exp_right;
    } else {
      jp["form"] = "powersum";
      jp["terms"] = nlohmann::json::array();
      for (const auto& t : p.terms) {
        nlohmann::json jt;
        jt["c"] = t.coef;
        jt["p"] = t.p;
        if (t.exp_left != 0.0) {
          jt["a"] = t.anchor_left;
          jt["qa"] = t.exp_left;
        }
        if (t.exp_right != 0.0) {
          jt["b"] = t.anchor_right;
          jt["qb"] = t.exp_right;
        }
        jp["terms"].push_back(jt);
      }
      if (p.has_sum_exp_lo()) jp["sum_exp_lo"] = p.sum_exp_lo;
      if (p.has_sum_exp_hi()) jp["sum_exp_hi"] = p.sum_exp_hi;
    }
    j["pieces"].push_back(jp);
  }
  return j;
}

Measure measure_from_json(const nlohmann::json& j) {
  if (j.contains("measure")) return measure_from_json(j.at("measure"));
  if (!j.contains("atom_zero") && !j.contains("atom_infinity") &&
      !j.contains("atoms") && !j.contains("pieces"))
    throw std::invalid_argument(
        "measure json: no measure fields present");
  const double atom_zero = j.value("atom_zero", 0.0);
  const double atom_infinity = j.value("atom_infinity", 0.0);
  std::vector<Atom> atoms;
  if (j.contains("atoms")) {
    for (const auto& ja : j.at("atoms")) {
      if (!ja.is_array() || ja.size() != 2)
        throw std::invalid_argument("measure json: atoms must be [u, m] pairs");
      atoms.push_back({ja[0].get<double>(), ja[1].get<double>()});
    }
  }
  std::vector<DensityPiece> pieces;
  if (j.contains("pieces")) {
    for (const auto& jp : j.at("pieces")) {
      DensityPiece p;
      const auto& iv = jp.at("interval");
      p.lo = endpoint_from_json(iv.at(0));
      p.hi = endpoint_from_json(iv.at(1));
      const std::string form = jp.at("form").get<std::string>();
      if (form == "constant") {
        p.terms.push_back({jp.at("c").get<double>(), 0.0, 0.0, 0.0, kInf, 0.0});
      } else if (form == "power") {
        PowerTerm t;
        t.coef = jp.at("c").get<double>();
        t.p = jp.value("p", 0.0);
        t.exp_right = jp.value("q", 0.0);
        t.anchor_right = (t.exp_right != 0.0) ? p.hi : kInf;
        if (t.exp_right != 0.0 && std::isinf(p.hi))
          throw std::invalid_argument(
              "measure json: power form with q != 0 needs a finite endpoint");
        p.terms.push_back(t);
      } else if (form == "powersum") {
        if (jp.contains("sum_exp_lo")) p.sum_exp_lo = jp["sum_exp_lo"].get<double>();
        if (jp.contains("sum_exp_hi")) p.sum_exp_hi = jp["sum_exp_hi"].get<double>();
        for (const auto& jt : jp.at("terms")) {
          PowerTerm t;
          t.coef = jt.at("c").get<double>();
          t.p = jt.value("p", 0.0);
          t.exp_left = jt.value("qa", 0.0);
          t.anchor_left = jt.value("a", 0.0);
          t.exp_right = jt.value("qb", 0.0);
          t.anchor_right =
              jt.contains("b") ? endpoint_from_json(jt.at("b")) : kInf;
          p.terms.push_back(t);
        }
      } else {
        throw std::invalid_argument("measure json: unknown piece form \"" +
                                    form + "\"");
      }
      pieces.push_back(std::move(p));
    }
  }
  return Measure(atom_zero, atom_infinity, std::move(atoms),
                 std::move(pieces));
}

Measure load_measure(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open measure file: " + path);
  nlohmann::json j;
  in >> j;
  return measure_from_json(j);
}

void save_measure(const Measure& mu, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write measure file: " + path);
  out << measure_to_json(mu).dump(2) << "\n";
}

}  // namespace stieltjes
