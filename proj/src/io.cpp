#include "koszulkit/io.hpp"

#include <cctype>

#include "koszulkit/errors.hpp"

namespace koszulkit {

namespace {

const Json& require(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw ParseError(where + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(where + ": missing \"" + key + "\"");
  return *it;
}

std::uint64_t as_uint(const Json& j, const std::string& what) {
  if (!j.is_number_integer() || (!j.is_number_unsigned() && j.get<std::int64_t>() < 0))
    throw ParseError(what + ": expected a non-negative integer");
  return j.get<std::uint64_t>();
}

BigInt as_bigint(const Json& j, const std::string& what) {
  if (j.is_number_unsigned()) return BigInt(j.get<std::uint64_t>());
  if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return BigInt(j.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  throw ParseError(what + ": expected an integer");
}

std::uint32_t read_p(const Json& j) {
  const auto p = as_uint(require(j, "p", "document"), "p");
  if (p >= (std::uint64_t{1} << 31)) throw InvalidArgument("p = " + std::to_string(p) + " is too large");
  return static_cast<std::uint32_t>(p);
}

void check_keys(const Json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || it.key() == a;
    if (!ok) throw ParseError(where + ": unknown key \"" + it.key() + "\"");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Quadratic relations as text

std::vector<std::int64_t> parse_quadratic(std::string_view s, std::size_t d) {
  std::vector<std::int64_t> out(d * d, 0);
  std::size_t pos = 0;
  const auto fail = [&](const std::string& msg) -> void {
    throw ParseError("relation: " + msg + " at offset " + std::to_string(pos) + " in \"" + std::string(s) + "\"");
  };
  const auto skip = [&] {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  };
  const auto number = [&]() -> std::int64_t {
    std::int64_t v = 0;
    const std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      if (v > (std::int64_t{1} << 40)) fail("number too large");
      v = v * 10 + (s[pos++] - '0');
    }
    if (pos == start) fail("expected a number");
    return v;
  };
  const auto letter = [&]() -> std::size_t {
    if (pos >= s.size() || s[pos] != 'X') fail("expected X<i>");
    ++pos;
    const auto i = number();
    if (i < 1 || static_cast<std::size_t>(i) > d) fail("letter X" + std::to_string(i) + " outside 1.." + std::to_string(d));
    return static_cast<std::size_t>(i - 1);
  };
  skip();
  if (pos < s.size() && s[pos] == '0' && s.substr(pos).find('X') == std::string_view::npos) {
    ++pos;
    skip();
    if (pos != s.size()) fail("trailing input");
    return out;
  }
  bool first = true;
  while (true) {
    skip();
    std::int64_t sign = 1;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
      skip();
    } else if (!first) {
      fail("expected + or -");
    }
    std::int64_t coeff = 1;
    if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      coeff = number();
      skip();
      if (pos < s.size() && s[pos] == '*') ++pos;
      skip();
    }
    const std::size_t i = letter();
    const std::size_t j = letter();
    out[i * d + j] += sign * coeff;
    first = false;
    skip();
    if (pos == s.size()) break;
  }
  return out;
}

std::string quadratic_to_string(const SparseVector& v, const PrimeField& field, std::size_t d) {
  if (v.empty()) return "0";
  std::string s;
  const std::int64_t p = field.p();
  for (auto [c, x] : v) {
    std::int64_t b = x;
    if (b > p / 2) b -= p;
    const bool neg = b < 0;
    const std::int64_t mag = neg ? -b : b;
    if (s.empty())
      s += neg ? "-" : "";
    else
      s += neg ? " - " : " + ";
    if (mag != 1) s += std::to_string(mag) + "*";
    s += "X" + std::to_string(c / d + 1) + "X" + std::to_string(c % d + 1);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Algebras

QuadraticPresentation algebra_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("algebra: expected an object");
  check_keys(j, {"p", "d", "generators", "relations"}, "algebra");
  const PrimeField F(read_p(j));
  std::vector<std::string> labels;
  if (auto it = j.find("generators"); it != j.end()) {
    if (!it->is_array()) throw ParseError("algebra: \"generators\" must be an array of strings");
    for (const auto& g : *it) {
      if (!g.is_string()) throw ParseError("algebra: generator labels must be strings");
      labels.push_back(g.get<std::string>());
    }
    if (auto dit = j.find("d"); dit != j.end() && as_uint(*dit, "d") != labels.size())
      throw ParseError("algebra: \"d\" disagrees with the generator count");
  } else {
    labels = default_labels(as_uint(require(j, "d", "algebra"), "d"));
  }
  const std::size_t d = labels.size();
  if (d == 0) throw InvalidArgument("algebra needs at least one generator");
  if (d > 255) throw InvalidArgument("at most 255 generators are supported");
  std::vector<std::vector<std::int64_t>> rows;
  if (auto it = j.find("relations"); it != j.end()) {
    if (!it->is_array()) throw ParseError("algebra: \"relations\" must be an array");
    for (const auto& r : *it) {
      if (r.is_string()) {
        rows.push_back(parse_quadratic(r.get<std::string>(), d));
      } else if (r.is_array()) {
        if (r.size() != d * d)
          throw ParseError("algebra: relation vector of length " + std::to_string(r.size()) + ", expected " +
                           std::to_string(d * d));
        std::vector<std::int64_t> row;
        for (const auto& x : r) {
          if (!x.is_number_integer()) throw ParseError("algebra: relation coefficients must be integers");
          row.push_back(x.get<std::int64_t>());
        }
        rows.push_back(std::move(row));
      } else {
        throw ParseError("algebra: each relation is a string or an integer array");
      }
    }
  }
  return QuadraticPresentation(F, std::move(labels), Subspace::span(F, d * d, rows));
}

Json algebra_to_json(const QuadraticPresentation& a) {
  Json rel = Json::array();
  for (const auto& row : a.relations().rows())
    rel.push_back(quadratic_to_string(row, a.field(), a.num_generators()));
  return Json{{"p", a.field().p()}, {"generators", a.generators()}, {"relations", rel}};
}

// ---------------------------------------------------------------------------
// Group specs

namespace {

GroupSpec spec_rec(const Json& g, std::uint32_t p, const std::string& where) {
  const std::string kind = [&] {
    const Json& k = require(g, "kind", where);
    if (!k.is_string()) throw ParseError(where + ": \"kind\" must be a string");
    return k.get<std::string>();
  }();
  const auto uint_field = [&](const char* key) { return as_uint(require(g, key, where), where + "." + key); };
  const auto q_field = [&]() -> std::uint64_t {
    auto it = g.find("q");
    return it == g.end() ? 0 : as_uint(*it, where + ".q");
  };
  if (kind == "free") {
    check_keys(g, {"kind", "d"}, where);
    return GroupSpec::free(p, uint_field("d"));
  }
  if (kind == "demushkin") {
    check_keys(g, {"kind", "d", "q", "variant", "f", "alpha"}, where);
    DemushkinVariant v = DemushkinVariant::I;
    if (auto it = g.find("variant"); it != g.end()) {
      if (!it->is_string()) throw ParseError(where + ".variant: expected \"i\", \"ii\" or \"iii\"");
      const auto s = it->get<std::string>();
      if (s == "i")
        v = DemushkinVariant::I;
      else if (s == "ii")
        v = DemushkinVariant::II;
      else if (s == "iii")
        v = DemushkinVariant::III;
      else
        throw ParseError(where + ".variant: expected \"i\", \"ii\" or \"iii\"");
    }
    std::optional<unsigned> f;
    if (auto it = g.find("f"); it != g.end()) {
      if (it->is_string() && it->get<std::string>() == "inf")
        f = std::nullopt;
      else
        f = static_cast<unsigned>(std::min<std::uint64_t>(as_uint(*it, where + ".f"), 1000));
    } else if (v != DemushkinVariant::I && !(v == DemushkinVariant::III && uint_field("d") == 2)) {
      throw ParseError(where + ": cases (ii) and (iii) need \"f\" (an integer or \"inf\")");
    }
    std::int64_t alpha = 0;
    if (auto it = g.find("alpha"); it != g.end()) {
      if (!it->is_number_integer()) throw ParseError(where + ".alpha: expected an integer");
      alpha = it->get<std::int64_t>();
    }
    const std::uint64_t q = v == DemushkinVariant::I ? q_field() : 2;
    return GroupSpec::demushkin(p, uint_field("d"), q, v, f, alpha);
  }
  if (kind == "theta_abelian") {
    check_keys(g, {"kind", "d", "q"}, where);
    return GroupSpec::theta_abelian(p, uint_field("d"), q_field());
  }
  if (kind == "fibre") {
    check_keys(g, {"kind", "c", "inner"}, where);
    return GroupSpec::fibre_product(spec_rec(require(g, "inner", where), p, where + ".inner"), uint_field("c"));
  }
  if (kind == "free_product") {
    check_keys(g, {"kind", "a", "b"}, where);
    return GroupSpec::free_product(spec_rec(require(g, "a", where), p, where + ".a"),
                                   spec_rec(require(g, "b", where), p, where + ".b"));
  }
  if (kind == "presentation") {
    check_keys(g, {"kind", "generators", "relations", "theta"}, where);
    const Json& gens = require(g, "generators", where);
    const Json& rels = require(g, "relations", where);
    if (!gens.is_array() || !rels.is_array()) throw ParseError(where + ": generators and relations must be arrays");
    std::vector<std::string> labels;
    for (const auto& x : gens) {
      if (!x.is_string()) throw ParseError(where + ": generator labels must be strings");
      labels.push_back(x.get<std::string>());
    }
    std::vector<Word> words;
    for (const auto& r : rels) {
      if (!r.is_string()) throw ParseError(where + ": relations must be word strings");
      words.push_back(parse_word(r.get<std::string>()));
    }
    std::vector<BigInt> theta(labels.size(), 1);
    if (auto it = g.find("theta"); it != g.end()) {
      if (!it->is_array()) throw ParseError(where + ".theta: expected an array");
      theta.clear();
      for (const auto& t : *it) theta.push_back(as_bigint(t, where + ".theta"));
    }
    return GroupSpec::custom(p, std::move(labels), std::move(words), std::move(theta));
  }
  throw ParseError(where + ": unknown kind \"" + kind + "\"");
}

Json spec_json_rec(const GroupSpec& s) {
  switch (s.kind()) {
    case GroupSpec::Kind::Free:
      return {{"kind", "free"}, {"d", s.d()}};
    case GroupSpec::Kind::Demushkin: {
      Json j{{"kind", "demushkin"}, {"d", s.d()}, {"q", s.q()}};
      if (s.variant() != DemushkinVariant::I) {
        j["variant"] = s.variant() == DemushkinVariant::II ? "ii" : "iii";
        if (s.f())
          j["f"] = *s.f();
        else
          j["f"] = "inf";
        if (s.variant() == DemushkinVariant::III) j["alpha"] = s.alpha();
      }
      return j;
    }
    case GroupSpec::Kind::ThetaAbelian:
      return {{"kind", "theta_abelian"}, {"d", s.d()}, {"q", s.q()}};
    case GroupSpec::Kind::FibreProduct:
      return {{"kind", "fibre"}, {"c", s.c()}, {"inner", spec_json_rec(s.inner())}};
    case GroupSpec::Kind::FreeProduct:
      return {{"kind", "free_product"}, {"a", spec_json_rec(s.left())}, {"b", spec_json_rec(s.right())}};
    case GroupSpec::Kind::Custom: {
      Json rels = Json::array(), theta = Json::array();
      for (const auto& r : s.custom_relations()) rels.push_back(r.to_string());
      for (const auto& t : s.custom_theta()) theta.push_back(t.str());
      return {{"kind", "presentation"}, {"generators", s.custom_generators()}, {"relations", rels}, {"theta", theta}};
    }
  }
  return {};
}

}  // namespace

GroupSpec group_spec_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("group document: expected an object");
  check_keys(j, {"p", "group"}, "group document");
  return spec_rec(require(j, "group", "group document"), read_p(j), "group");
}

Json group_spec_to_json(const GroupSpec& s) { return Json{{"p", s.p()}, {"group", spec_json_rec(s)}}; }

// ---------------------------------------------------------------------------
// Reports

Json padic_to_json(const PadicApprox& a) {
  return Json{{"value", a.value}, {"balanced", a.balanced()}, {"precision", a.precision}};
}

Json presentation_to_json(const GroupPresentation& g) {
  Json rels = Json::array(), theta = Json::array();
  for (const auto& r : g.relations) rels.push_back(r.to_string());
  for (const auto& t : g.orientation.values) theta.push_back(t.balanced());
  return Json{{"p", g.p},
              {"precision", g.precision()},
              {"generators", g.generators},
              {"relations", rels},
              {"theta", theta}};
}

Json dims_to_json(const GradedDims& dims) { return Json(dims); }

Json tor_to_json(const TorTable& t) {
  return Json{{"imax", t.imax}, {"jmax", t.jmax}, {"tor", t.tor}, {"chain", t.chain}};
}

Json koszul_report_to_json(const KoszulReport& r) {
  Json j{{"checked_bound", r.checked_bound},
         {"koszul_up_to", r.koszul_up_to},
         {"koszul", r.koszul()},
         {"hilbert_defect", r.hilbert_defect},
         {"tor", tor_to_json(r.tor)}};
  j["witness"] = r.witness ? Json{{"i", r.witness->first}, {"j", r.witness->second}} : Json(nullptr);
  return j;
}

Json duality_report_to_json(const DualityReport& r) {
  return Json{{"relation_subspaces_equal", r.relation_subspaces_equal},
              {"dims_equal_up_to", r.dims_equal_up_to},
              {"checked_up_to", r.checked_up_to},
              {"holds", r.holds()},
              {"dual_dims", r.dual_dims},
              {"gr_dims", r.gr_dims}};
}

Json invariants_to_json(const GroupInvariants& inv) {
  Json j{{"d", inv.d},
         {"r", inv.r},
         {"abelianization", {{"free_rank", inv.abelianization.free_rank}, {"torsion", inv.abelianization.torsion}}},
         {"theta_centre_rank", inv.theta_centre_rank}};
  j["t1"] = inv.t1 ? Json(*inv.t1) : Json(nullptr);
  j["f1"] = inv.f1 ? Json(*inv.f1) : Json(nullptr);
  if (inv.t1_f1_modeling_choice)
    j["t1_f1_note"] = "free-product rule (t1 summed, f1 summed plus 1 when both factors are oriented) is a modeling choice";
  return j;
}

Json obstruction_to_json(const ObstructionTable& t) {
  Json entries = Json::array();
  for (const auto& row : t.entries) {
    Json r = Json::array();
    for (const auto& e : row) r.push_back(padic_to_json(e));
    entries.push_back(std::move(r));
  }
  return Json{{"p", t.p},
              {"precision", t.precision},
              {"rows", t.generators},
              {"columns", t.relations},
              {"entries", entries},
              {"status", t.obstructed() ? "obstructed" : "no obstruction found"}};
}

}  // namespace koszulkit
