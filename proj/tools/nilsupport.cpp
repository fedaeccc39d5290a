// Command-line front end. Exit codes: 0 ok, 1 usage, 2 parse, 3 budget,
// 4 internal invariant breach, 5 verification reported a failure.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nilsupport/nilsupport.hpp"

namespace ns = nilsupport;

namespace {

enum Exit { kOk = 0, kUsage = 1, kParse = 2, kBudget = 3, kInternal = 4, kVerifyFailed = 5 };

struct Common {
  std::string format = "json";
  std::uint64_t seed = 0;
  std::string out;
  std::uint32_t p = 2;
  std::uint32_t m = 1;
  std::vector<std::uint32_t> modulus;
  std::optional<std::uint64_t> budget;
  std::size_t workers = 1;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--seed", c.seed, "Seed for every random choice");
  cmd->add_option("--out", c.out, "Write output to this file instead of stdout");
  cmd->add_option("--p", c.p, "Field characteristic");
  cmd->add_option("--m", c.m, "Extension degree");
  cmd->add_option("--modulus", c.modulus, "Monic modulus coefficients, constant term first")->delimiter(',');
  cmd->add_option("--budget", c.budget, "Candidate budget for exhaustive searches");
  cmd->add_option("--workers", c.workers, "Worker threads for support evaluation")->check(CLI::PositiveNumber);
}

ns::FieldPtr field_of(const Common& c) { return ns::make_field(ns::FieldSpec{c.p, c.m, c.modulus}); }

std::uint64_t budget_of(const Common& c) {
  if (c.budget) {
    if (*c.budget == 0) throw UsageError("budget must be positive");
    return *c.budget;
  }
  if (const char* env = std::getenv("NILSUPPORT_BUDGET")) {
    std::uint64_t v = 0;
    std::istringstream in(env);
    if (!(in >> v) || !in.eof() || v == 0) throw UsageError("NILSUPPORT_BUDGET must be a positive integer");
    return v;
  }
  return ns::kDefaultBudget;
}

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw UsageError("cannot open output file " + c.out);
  f << text;
}

std::string dump(const ns::Json& j) { return j.dump(2) + "\n"; }

ns::Json tuples_json(const ns::FieldPtr& field, std::size_t n, std::size_t r, const std::vector<ns::NilTuple>& ts) {
  ns::Json j;
  j["field"] = ns::to_json(field->spec());
  j["n"] = n;
  j["r"] = r;
  j["count"] = ts.size();
  ns::Json arr = ns::Json::array();
  for (const auto& t : ts) arr.push_back(ns::to_json(t));
  j["tuples"] = std::move(arr);
  return j;
}

std::size_t resolve_n(const ns::ModuleExpr& e, std::optional<std::size_t> n) {
  if (n) return *n;
  if (e.rank() == 0) throw UsageError("--n is required for a module without def/ad leaves");
  return e.rank();
}

std::set<int> parse_items(const std::string& text) {
  std::set<int> items;
  std::stringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(tok, &used);
      if (used != tok.size() || !ns::known_items().count(v)) throw std::invalid_argument(tok);
      items.insert(v);
    } catch (const std::logic_error&) {
      throw UsageError("invalid item '" + tok + "'");
    }
  }
  if (items.empty()) throw UsageError("no items selected");
  return items;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot read " + path);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Support varieties of GL_n-modules over finite fields"};
  app.require_subcommand(1);

  Common c;
  std::string module_text, tuple_path, op_kind = "alpha", grid = "tiny", items_text = "1,3,4,5,6,7,8";
  std::optional<std::size_t> n;
  std::size_t r = 1, count = 10, conjugations = 50;

  auto* jordan = app.add_subcommand("jordan", "Jordan type of the local operator at a tuple");
  jordan->add_option("--module", module_text, "Module expression")->required();
  jordan->add_option("--tuple", tuple_path, "Tuple JSON file")->required();
  jordan->add_option("--operator", op_kind, "alpha or mu")->check(CLI::IsMember({"alpha", "mu"}));
  add_common(jordan, c);

  auto* support = app.add_subcommand("support", "Support membership over enumerated or sampled tuples");
  support->require_subcommand(1);
  auto* sup_enum = support->add_subcommand("enumerate", "Every tuple of the commuting nilpotent variety");
  auto* sup_sample = support->add_subcommand("sample", "Seeded random tuples");
  for (auto* s : {sup_enum, sup_sample}) {
    s->add_option("--module", module_text, "Module expression")->required();
    s->add_option("--n", n, "Matrix size (defaults to the module's n)");
    s->add_option("--r", r, "Tuple length");
    add_common(s, c);
  }
  sup_sample->add_option("--count", count, "Number of samples");

  auto* weights = app.add_subcommand("weights", "Weight multiplicities of a module");
  weights->add_option("--module", module_text, "Module expression")->required();
  add_common(weights, c);

  auto* expdeg = app.add_subcommand("expdeg", "Exponential degree bound of a module");
  expdeg->add_option("--module", module_text, "Module expression")->required();
  add_common(expdeg, c);

  auto* irred = app.add_subcommand("irreducible", "Exhaustive irreducibility test");
  irred->add_option("--module", module_text, "Module expression")->required();
  add_common(irred, c);

  auto* verify = app.add_subcommand("verify", "Check structural properties of supports on a grid");
  verify->add_option("--items", items_text, "Comma-separated item numbers");
  verify->add_option("--grid", grid, "Grid preset");
  verify->add_option("--conjugations", conjugations, "Random conjugations per module and tuple");
  add_common(verify, c);

  auto* cr = app.add_subcommand("cr", "Commuting p-nilpotent tuples");
  cr->require_subcommand(1);
  auto* cr_enum = cr->add_subcommand("enumerate", "All tuples in lexicographic order");
  auto* cr_sample = cr->add_subcommand("sample", "Seeded random tuples");
  for (auto* s : {cr_enum, cr_sample}) {
    s->add_option("--n", n, "Matrix size")->required();
    s->add_option("--r", r, "Tuple length");
    add_common(s, c);
  }
  cr_sample->add_option("--count", count, "Number of samples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  const bool csv = c.format == "csv";
  try {
    if (*jordan) {
      const auto e = ns::parse_module(module_text);
      const auto b = ns::tuple_from_json(ns::parse_json(read_file(tuple_path)));
      const auto op = op_kind == "mu" ? ns::mu_operator(e, b) : ns::alpha_operator(e, b);
      const auto jt = ns::jordan_type(op);
      const bool member = jt.has_small_block(b.field()->p());
      if (csv) {
        std::string parts;
        for (std::size_t k = 0; k < jt.parts.size(); ++k) parts += (k ? " " : "") + std::to_string(jt.parts[k]);
        emit(c, "module,operator,jordan_type,in_support\n" + ns::to_dsl(e) + "," + op_kind + "," + parts + "," +
                    (member ? "true" : "false") + "\n");
      } else {
        ns::Json j;
        j["module"] = ns::to_dsl(e);
        j["operator"] = op_kind;
        j["tuple"] = ns::to_json(b);
        j["matrix"] = ns::to_json(op.matrix());
        j["jordan_type"] = ns::to_json(jt);
        j["in_support"] = member;
        emit(c, dump(j));
      }
    } else if (*sup_enum || *sup_sample) {
      const auto e = ns::parse_module(module_text);
      const auto field = field_of(c);
      const std::size_t nn = resolve_n(e, n);
      const auto rep = *sup_enum ? ns::enumerate_support(e, nn, r, field, budget_of(c), c.workers)
                                 : ns::sample_support(e, nn, r, field, c.seed, count, c.workers);
      emit(c, csv ? ns::to_csv(rep) : dump(ns::to_json(rep)));
    } else if (*weights) {
      const auto e = ns::parse_module(module_text);
      const auto table = ns::weights(e, c.p);
      if (csv) {
        std::string s = "weight,multiplicity\n";
        for (const auto& [w, mult] : table.entries) {
          std::string ws;
          for (std::size_t k = 0; k < w.size(); ++k) ws += (k ? " " : "") + std::to_string(w[k]);
          s += ws + "," + std::to_string(mult) + "\n";
        }
        emit(c, s);
      } else {
        ns::Json j;
        j["module"] = ns::to_dsl(e);
        j["p"] = c.p;
        j["dim"] = e.dim();
        j["weights"] = ns::to_json(table);
        emit(c, dump(j));
      }
    } else if (*expdeg) {
      const auto e = ns::parse_module(module_text);
      if (!ns::detail::is_prime(c.p)) throw ns::FieldError("p must be prime");
      const std::size_t bound = ns::exp_degree_bound(e, c.p);
      if (csv) {
        emit(c, "module,p,polydeg,exp_degree_bound\n" + ns::to_dsl(e) + "," + std::to_string(c.p) + "," +
                    std::to_string(e.polydeg(c.p)) + "," + std::to_string(bound) + "\n");
      } else {
        ns::Json j;
        j["module"] = ns::to_dsl(e);
        j["p"] = c.p;
        j["polydeg"] = e.polydeg(c.p);
        j["exp_degree_bound"] = bound;
        emit(c, dump(j));
      }
    } else if (*irred) {
      const auto e = ns::parse_module(module_text);
      const auto field = field_of(c);
      const auto res = ns::is_irreducible_exhaustive(e, field, budget_of(c));
      if (csv) {
        emit(c, "module,irreducible,witness_dim\n" + ns::to_dsl(e) + "," + (res.irreducible ? "true" : "false") +
                    "," + std::to_string(res.witness.size()) + "\n");
      } else {
        ns::Json j;
        j["module"] = ns::to_dsl(e);
        j["field"] = ns::to_json(field->spec());
        j["irreducible"] = res.irreducible;
        j["witness"] = res.witness;
        emit(c, dump(j));
      }
    } else if (*verify) {
      const auto items = parse_items(items_text);
      ns::VerifyOptions opts;
      opts.seed = c.seed;
      opts.conjugations = conjugations;
      const auto rep = ns::verify_grid(ns::grid_preset(grid), items, opts, budget_of(c));
      emit(c, csv ? ns::to_csv(rep) : dump(ns::to_json(rep)));
      if (!rep.all_passed()) return kVerifyFailed;
    } else if (*cr_enum || *cr_sample) {
      const auto field = field_of(c);
      std::vector<ns::NilTuple> ts;
      if (*cr_enum) {
        ts = ns::enumerate_cr(*n, r, field, budget_of(c));
      } else {
        std::mt19937_64 seeder(c.seed);
        for (std::size_t i = 0; i < count; ++i) ts.push_back(ns::sample_cr(*n, r, field, seeder()));
      }
      emit(c, csv ? ns::tuples_to_csv(ts) : dump(tuples_json(field, *n, r, ts)));
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ns::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const ns::MixedRank& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const ns::SchemaError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const ns::BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const ns::InvariantViolation& e) {
    std::cerr << "internal invariant violated: " << e.what() << "\n";
    return kInternal;
  } catch (const ns::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kOk;
}
