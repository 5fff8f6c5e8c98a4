#include "valtoric/document.hpp"

#include <json.hpp>
#include <sstream>

namespace valtoric {

using nlohmann::json;

std::string fnv1a_digest(const std::string& data) {
  unsigned long long h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

std::string field_to_string(const Field& f) {
  if (f.p == 0) return "q";
  return "fp:" + std::to_string(f.p);
}

Field parse_field(const std::string& s) {
  if (s == "q" || s == "Q") return Field{0};
  if (s.rfind("fp:", 0) == 0) {
    unsigned long p = std::stoul(s.substr(3));
    if (p < 2) throw std::invalid_argument("field: bad characteristic");
    for (unsigned long d = 2; d * d <= p; ++d)
      if (p % d == 0) throw std::invalid_argument("field: characteristic must be prime");
    return Field{p};
  }
  throw std::invalid_argument("field: expected \"q\" or \"fp:<p>\"");
}

std::string order_to_string(const MonomialOrder& o) {
  std::ostringstream os;
  os << "[";
  for (int k = 0; k < o.height(); ++k) {
    if (k) os << "; ";
    os << "(";
    for (int j = 0; j < o.ambient_rank(); ++j) {
      if (j) os << ", ";
      os << to_string(o.rows()[static_cast<size_t>(k)][static_cast<size_t>(j)]);
    }
    os << ")";
  }
  os << "]";
  return os.str();
}

namespace {

MonomialOrder order_from_json(const json& j) {
  int rank = j.at("rank").get<int>();
  std::vector<std::vector<QuadExt>> rows;
  for (const auto& row : j.at("rows")) {
    std::vector<QuadExt> r;
    for (const auto& c : row) r.push_back(parse_quadext(c.get<std::string>()));
    rows.push_back(std::move(r));
  }
  return MonomialOrder(rank, std::move(rows));
}

json order_to_json(const MonomialOrder& o) {
  json rows = json::array();
  for (int k = 0; k < o.height(); ++k) {
    json row = json::array();
    for (int j = 0; j < o.ambient_rank(); ++j)
      row.push_back(to_string(o.rows()[static_cast<size_t>(k)][static_cast<size_t>(j)]));
    rows.push_back(row);
  }
  return json{{"rank", o.ambient_rank()}, {"rows", rows}};
}

ValueVec valuevec_from_json(const json& j, int rank) {
  ValueVec v;
  if (j.is_array()) {
    for (const auto& c : j) v.push_back(parse_rational(c.get<std::string>()));
  } else {
    v.push_back(parse_rational(j.get<std::string>()));
  }
  if (static_cast<int>(v.size()) != rank)
    throw std::invalid_argument("document: value vector has wrong dimension");
  return v;
}

json valuevec_to_json(const ValueVec& v) {
  json a = json::array();
  for (const auto& c : v) a.push_back(c.get_str());
  return a;
}

ZVec zvec_from_json(const json& j) {
  ZVec v;
  for (const auto& c : j) v.push_back(mpz_class(c.get<std::string>()));
  return v;
}

}  // namespace

Document parse_document(const std::string& json_text) {
  json j = json::parse(json_text);
  Document doc{Field{}, MonomialOrder::standard_rank1(), {}, {}, {}, {}, {}, {}, {}};
  doc.field = parse_field(j.value("field", "q"));
  if (j.contains("order"))
    doc.order = order_from_json(j.at("order"));
  else
    doc.order = MonomialOrder::standard_rank1();
  const int rank = doc.order.ambient_rank();

  if (j.contains("variables")) {
    for (const auto& var : j.at("variables")) {
      doc.variables.push_back(var.at("name").get<std::string>());
      doc.weights.push_back(valuevec_from_json(var.at("weight"), rank));
    }
  }
  if (j.contains("equations"))
    for (const auto& eq : j.at("equations"))
      doc.equations.push_back(parse_poly(eq.get<std::string>(), doc.variables, doc.field));
  if (j.contains("truncation"))
    doc.truncation = valuevec_from_json(j.at("truncation"), rank);
  else {
    doc.truncation = vv_zero(rank);
    for (const auto& w : doc.weights)
      for (int k = 0; k < rank; ++k)
        doc.truncation[static_cast<size_t>(k)] += 4 * abs(w[static_cast<size_t>(k)]);
  }
  if (j.contains("semigroup")) {
    std::vector<ValueVec> gens;
    for (const auto& g : j.at("semigroup")) gens.push_back(valuevec_from_json(g, rank));
    doc.semigroup_gens = gens;
  }
  if (j.contains("branch")) {
    const json& br = j.at("branch");
    std::vector<std::string> xnames;
    std::vector<ValueVec> xweights;
    for (const auto& var : br.at("base")) {
      xnames.push_back(var.at("name").get<std::string>());
      xweights.push_back(valuevec_from_json(var.at("weight"), rank));
    }
    BaseRing base(xnames, VarWeights(xweights, doc.order), doc.field);
    std::vector<ValueVec> gamma;
    for (const auto& g : br.at("gamma")) gamma.push_back(valuevec_from_json(g, rank));
    BranchData B{base, gamma, {}};
    std::vector<std::string> combined = xnames;
    for (size_t i = 0; i < gamma.size(); ++i) combined.push_back("u" + std::to_string(i + 1));
    for (const auto& je : br.at("equations")) {
      BranchEquation e;
      e.n = mpz_class(je.at("n").get<std::string>());
      e.r_part = zvec_from_json(je.at("r"));
      e.s_part = zvec_from_json(je.at("s"));
      if (je.contains("t"))
        for (const auto& [k, tv] : je.at("t").items())
          e.t[std::stoi(k) - 1] = mpz_class(tv.get<std::string>());
      if (je.contains("lambda")) e.lambda = parse_rational(je.at("lambda").get<std::string>());
      if (je.contains("unit")) e.unit = parse_rational(je.at("unit").get<std::string>());
      if (je.contains("g")) e.g = parse_poly(je.at("g").get<std::string>(), combined, doc.field);
      B.eqs.push_back(std::move(e));
    }
    B.validate();
    doc.branch = std::move(B);
  }
  doc.source_digest = fnv1a_digest(print_document(doc));
  return doc;
}

std::string print_document(const Document& doc) {
  json j;
  j["field"] = field_to_string(doc.field);
  j["order"] = order_to_json(doc.order);
  if (!doc.variables.empty()) {
    json vars = json::array();
    for (size_t i = 0; i < doc.variables.size(); ++i)
      vars.push_back(
          json{{"name", doc.variables[i]}, {"weight", valuevec_to_json(doc.weights[i])}});
    j["variables"] = vars;
  }
  if (!doc.equations.empty()) {
    json eqs = json::array();
    for (const auto& e : doc.equations) eqs.push_back(print_poly(e, doc.variables));
    j["equations"] = eqs;
  }
  j["truncation"] = valuevec_to_json(doc.truncation);
  if (doc.semigroup_gens) {
    json gens = json::array();
    for (const auto& g : *doc.semigroup_gens) gens.push_back(valuevec_to_json(g));
    j["semigroup"] = gens;
  }
  if (doc.branch) {
    const BranchData& B = *doc.branch;
    json base = json::array();
    for (int i = 0; i < B.base.r(); ++i)
      base.push_back(
          json{{"name", B.base.names()[static_cast<size_t>(i)]},
               {"weight", valuevec_to_json(B.base.weights().weights()[static_cast<size_t>(i)])}});
    json gamma = json::array();
    for (const auto& g : B.gamma) gamma.push_back(valuevec_to_json(g));
    json eqs = json::array();
    std::vector<std::string> combined = B.combined_names();
    for (const auto& e : B.eqs) {
      json je;
      je["n"] = e.n.get_str();
      json rj = json::array(), sj = json::array();
      for (const auto& c : e.r_part) rj.push_back(c.get_str());
      for (const auto& c : e.s_part) sj.push_back(c.get_str());
      je["r"] = rj;
      je["s"] = sj;
      if (!e.t.empty()) {
        json tj;
        for (const auto& [k, tv] : e.t) tj[std::to_string(k + 1)] = tv.get_str();
        je["t"] = tj;
      }
      if (e.lambda != 1) je["lambda"] = e.lambda.get_str();
      if (e.unit != 1) je["unit"] = e.unit.get_str();
      if (!e.g.is_zero()) je["g"] = print_poly(e.g, combined);
      eqs.push_back(je);
    }
    j["branch"] = json{{"base", base}, {"gamma", gamma}, {"equations", eqs}};
  }
  return j.dump(2);
}

OverweightSystem Document::system() const {
  VarWeights vw(weights, order);
  OverweightSystem sys(variables, vw, field, equations, truncation);
  auto rep = sys.validate();
  if (!rep.valid) {
    std::string msg = "document system invalid:";
    for (const auto& s : rep.failures) msg += " " + s;
    throw std::invalid_argument(msg);
  }
  return sys;
}

}  // namespace valtoric
