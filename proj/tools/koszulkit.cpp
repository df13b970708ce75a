// koszulkit: command-line front end.
//
// Exit codes: 0 success, 1 domain error (error name on stderr), 2 parse error.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "koszulkit/cocycle.hpp"
#include "koszulkit/errors.hpp"
#include "koszulkit/io.hpp"
#include "koszulkit/koszul.hpp"
#include "koszulkit/ncpoly.hpp"
#include "koszulkit/progroup.hpp"

using namespace koszulkit;

namespace {

struct Options {
  std::string input;
  std::string action;
  std::string word;
  std::size_t cap = 6;
  unsigned precision = 8;
  std::size_t bound = 4;
  std::size_t alphabet = 0;
  std::uint32_t prime = 3;
  std::string format = "json";
};

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::size_t chain_limit() {
  if (const char* env = std::getenv("KOSZULKIT_RESOURCE_LIMIT"); env && *env) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (*end != '\0' || v == 0) throw InvalidArgument("KOSZULKIT_RESOURCE_LIMIT must be a positive integer");
    return static_cast<std::size_t>(v);
  }
  return kDefaultChainLimit;
}

std::string join(const std::vector<std::size_t>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
  return os.str();
}

void print_algebra_table(const QuadraticPresentation& a) {
  std::cout << "p = " << a.field().p() << ", generators:";
  for (const auto& g : a.generators()) std::cout << ' ' << g;
  std::cout << "\nrelations (" << a.relations().dim() << "):\n";
  for (const auto& row : a.relations().rows())
    std::cout << "  " << quadratic_to_string(row, a.field(), a.num_generators()) << '\n';
}

void print_tor_table(const TorTable& t) {
  std::cout << "Tor_{i,j}   (rows i, columns j)\n      ";
  for (std::size_t j = 0; j <= t.jmax; ++j) std::cout << "j=" << j << '\t';
  std::cout << '\n';
  for (std::size_t i = 0; i <= t.imax; ++i) {
    std::cout << "i=" << i << "   ";
    for (std::size_t j = 0; j <= t.jmax; ++j) std::cout << t.at(i, j) << '\t';
    std::cout << '\n';
  }
}

void emit(const Options& o, const Json& j, const std::function<void()>& table) {
  if (o.format == "table")
    table();
  else
    std::cout << j.dump(2) << '\n';
}

int run(const Options& o, const std::string& command) {
  if (command == "hilbert") {
    const auto a = algebra_from_json(read_json(o.input));
    const auto dims = hilbert(a, o.cap);
    emit(o, Json{{"dims", dims}}, [&] { std::cout << join(dims) << '\n'; });
  } else if (command == "dual") {
    const auto a = koszul_dual(algebra_from_json(read_json(o.input)));
    emit(o, algebra_to_json(a), [&] { print_algebra_table(a); });
  } else if (command == "koszul") {
    const auto a = algebra_from_json(read_json(o.input));
    const auto r = is_koszul_up_to(a, o.bound, chain_limit());
    emit(o, koszul_report_to_json(r), [&] {
      print_tor_table(r.tor);
      if (r.witness)
        std::cout << "not Koszul: Tor_{" << r.witness->first << "," << r.witness->second << "} != 0\n";
      else
        std::cout << "Koszul through internal degree " << r.koszul_up_to << '\n';
    });
  } else if (command == "group") {
    const GroupSpec spec = group_spec_from_json(read_json(o.input));
    const unsigned m = std::max<unsigned>(o.precision, static_cast<unsigned>(o.cap));
    if (o.action == "presentation") {
      const auto g = presentation_of(spec, m);
      emit(o, presentation_to_json(g), [&] {
        std::cout << "generators:";
        for (const auto& l : g.generators) std::cout << ' ' << l;
        std::cout << "\nrelations:\n";
        for (const auto& r : g.relations) std::cout << "  " << r.to_string() << '\n';
        std::cout << "theta (mod " << g.p << "^" << g.precision() << "):";
        for (const auto& t : g.orientation.values) std::cout << ' ' << t.balanced();
        std::cout << '\n';
      });
    } else if (o.action == "cohomology" || o.action == "gr") {
      const auto a = o.action == "gr" ? gr_algebra(spec) : cohomology_ring(spec);
      const auto dims = hilbert(a, o.cap);
      Json j = algebra_to_json(a);
      j["dims"] = dims;
      emit(o, j, [&] {
        print_algebra_table(a);
        std::cout << "dims: " << join(dims) << '\n';
      });
    } else if (o.action == "invariants") {
      const auto inv = invariants(spec);
      emit(o, invariants_to_json(inv), [&] {
        std::cout << "d = " << inv.d << ", r = " << inv.r << "\nabelianization: Z_p^" << inv.abelianization.free_rank;
        for (auto q : inv.abelianization.torsion) std::cout << " + Z/" << q;
        std::cout << "\ntheta-centre rank: " << inv.theta_centre_rank << '\n';
        if (inv.t1) std::cout << "t1 = " << *inv.t1 << ", f1 = " << *inv.f1 << '\n';
      });
    } else if (o.action == "zassenhaus") {
      const auto dims = zassenhaus_dims(spec, o.cap);
      emit(o, Json{{"dims", dims}}, [&] { std::cout << join(dims) << '\n'; });
    } else if (o.action == "verify-duality") {
      if (o.cap < 2) throw InvalidArgument("verify-duality needs --cap >= 2");
      const auto r = verify_koszul_duality(spec, o.cap);
      emit(o, duality_report_to_json(r), [&] {
        std::cout << "relation subspaces equal: " << (r.relation_subspaces_equal ? "yes" : "no")
                  << "\ndims equal up to: " << r.dims_equal_up_to << "\ndual: " << join(r.dual_dims)
                  << "\ngr:   " << join(r.gr_dims) << '\n';
      });
    } else {
      throw ParseError("unknown group action \"" + o.action + "\"");
    }
  } else if (command == "obstruction") {
    const GroupSpec spec = group_spec_from_json(read_json(o.input));
    const auto g = presentation_of(spec, o.precision);
    const auto t = cyclotomic_obstruction(g, o.precision);
    emit(o, obstruction_to_json(t), [&] {
      std::cout << "f \\ r";
      for (std::size_t c = 0; c < t.relations.size(); ++c) std::cout << "\tr" << c + 1;
      std::cout << '\n';
      for (std::size_t i = 0; i < t.entries.size(); ++i) {
        std::cout << "f_" << t.generators[i];
        for (const auto& e : t.entries[i]) std::cout << '\t' << e.balanced();
        std::cout << '\n';
      }
      std::cout << (t.obstructed() ? "obstructed" : "no obstruction found") << " (mod " << t.p << "^" << t.precision
                << ")\n";
    });
  } else if (command == "magnus") {
    const Word w = parse_word(o.word);
    const std::size_t d = o.alphabet ? o.alphabet : std::max<std::size_t>(w.alphabet_bound(), 1);
    const PrimeField F(o.prime);
    const NcPoly m = magnus_expand(w, F, d, o.cap);
    const auto form = initial_form(w, F, d, o.cap);
    Json j{{"word", w.to_string()}, {"p", F.p()}, {"d", d}, {"cap", o.cap}, {"expansion", m.to_string()}};
    if (form)
      j["initial_form"] = Json{{"degree", form->degree}, {"coefficients", form->part.coeffs}};
    else
      j["initial_form"] = nullptr;
    emit(o, j, [&] { std::cout << m.to_string() << '\n'; });
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quadratic algebras, Koszul duality and oriented pro-p group presentations over F_p"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "table"}));

  auto* hil = app.add_subcommand("hilbert", "Graded dimensions of an algebra");
  hil->add_option("file", o.input, "Algebra JSON")->required();
  hil->add_option("--cap", o.cap, "Top degree N")->capture_default_str();

  auto* dual = app.add_subcommand("dual", "Koszul dual of an algebra");
  dual->add_option("file", o.input, "Algebra JSON")->required();

  auto* kos = app.add_subcommand("koszul", "Bar-complex Tor table and Koszulity up to a bound");
  kos->add_option("file", o.input, "Algebra JSON")->required();
  kos->add_option("--bound", o.bound, "Largest internal degree j")->capture_default_str();

  auto* grp = app.add_subcommand("group", "Computations on an oriented pro-p group spec");
  grp->add_option("file", o.input, "Group JSON")->required();
  grp->add_option("action", o.action, "presentation | cohomology | gr | invariants | zassenhaus | verify-duality")
      ->required();
  grp->add_option("--cap", o.cap, "Top degree N")->capture_default_str();
  grp->add_option("--precision", o.precision, "p-adic precision M")->capture_default_str()->check(CLI::Range(2u, 62u));

  auto* obs = app.add_subcommand("obstruction", "Crossed-homomorphism obstruction table");
  obs->add_option("file", o.input, "Group JSON")->required();
  obs->add_option("--precision", o.precision, "p-adic precision M")->capture_default_str()->check(CLI::Range(2u, 62u));

  auto* mag = app.add_subcommand("magnus", "Magnus expansion of a word");
  mag->add_option("word", o.word, "Word, e.g. \"comm(x1,x2)\"")->required();
  mag->add_option("--d", o.alphabet, "Alphabet size (default: generators used)");
  mag->add_option("--cap", o.cap, "Truncation degree")->capture_default_str();
  mag->add_option("--p", o.prime, "Prime")->capture_default_str();

  for (auto* sub : {hil, dual, kos, grp, obs, mag})
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "table"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    return run(o, app.get_subcommands().front()->get_name());
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.name() << ": " << e.what() << '\n';
    return 2;
  } catch (const Json::exception& e) {
    std::cerr << "error: parse-error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.name() << ": " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << '\n';
    return 1;
  }
}
