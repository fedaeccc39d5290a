#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "nilsupport/io.hpp"
#include "nilsupport/nilsupport.hpp"

using namespace nilsupport;

namespace {

ModuleExpr random_tree_raw(std::mt19937_64& rng, int depth);

ModuleExpr random_tree(std::mt19937_64& rng, int depth) {
  try {
    return random_tree_raw(rng, depth);
  } catch (const DimensionError&) {
    return ModuleExpr::def(2);
  }
}

ModuleExpr random_tree_raw(std::mt19937_64& rng, int depth) {
  const int choice = depth <= 0 ? static_cast<int>(rng() % 3) : static_cast<int>(rng() % 9);
  switch (choice) {
    case 0: return ModuleExpr::def(2);
    case 1: return ModuleExpr::triv();
    case 2: return ModuleExpr::ad(2);
    case 3: return ModuleExpr::dual(random_tree(rng, depth - 1));
    case 4: return ModuleExpr::sum(random_tree(rng, depth - 1), random_tree(rng, depth - 1));
    case 5: return ModuleExpr::tensor(random_tree(rng, depth - 1), random_tree(rng, depth - 1));
    case 6: return ModuleExpr::sym(rng() % 4, random_tree(rng, depth - 1));
    case 7: {
      auto e = random_tree(rng, depth - 1);
      return ModuleExpr::ext(rng() % (e.dim() + 1), e);
    }
    default: return ModuleExpr::twist(random_tree(rng, depth - 1), rng() % 3);
  }
}

// Inserts random whitespace around punctuation; identifiers and numbers stay intact.
std::string spaced(const std::string& s, std::mt19937_64& rng) {
  std::string out;
  for (char c : s) {
    const bool punct = c == ',' || c == '(' || c == ')';
    if (punct && rng() % 2) out += std::string(rng() % 3, ' ');
    out += c;
    if (punct && rng() % 2) out += " \t";
  }
  return out;
}

struct RunResult {
  int code;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(NILSUPPORT_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  char buf[4096];
  while (std::size_t k = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, k);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("nilsupport_test_" + name)).string();
}

}  // namespace

TEST(Dsl, Examples) {
  EXPECT_EQ(parse_module("sym(2, def(2))"), ModuleExpr::sym(2, ModuleExpr::def(2)));
  EXPECT_EQ(parse_module("  tw( def(3) ,1 ) "), ModuleExpr::twist(ModuleExpr::def(3), 1));
  EXPECT_EQ(parse_module("sum(triv,ad(2))"), ModuleExpr::sum(ModuleExpr::triv(), ModuleExpr::ad(2)));
  EXPECT_EQ(to_dsl(parse_module("ten( def(2), dual(def(2)) )")), "ten(def(2),dual(def(2)))");
  EXPECT_EQ(to_dsl(ModuleExpr::ext(2, ModuleExpr::def(3))), "ext(2,def(3))");
}

TEST(Dsl, ErrorOffsets) {
  auto offset_of = [](const std::string& s) -> long {
    try {
      parse_module(s);
    } catch (const ParseError& e) {
      return static_cast<long>(e.offset());
    }
    return -1;
  };
  EXPECT_EQ(offset_of("sym(2, def(2)"), 14);
  EXPECT_EQ(offset_of("foo(2)"), 1);
  EXPECT_EQ(offset_of("def(2) x"), 8);
  EXPECT_EQ(offset_of("sym(2 def(2))"), 7);
  EXPECT_EQ(offset_of(""), 1);
  EXPECT_EQ(offset_of("ext(3,def(2))"), 1);
  EXPECT_THROW(parse_module("sum(def(2),def(3))"), MixedRank);
}

TEST(Dsl, RandomRoundTrip) {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto e = random_tree(rng, 3);
    const std::string text = to_dsl(e);
    EXPECT_EQ(parse_module(text), e) << text;
    EXPECT_EQ(parse_module(spaced(text, rng)), e) << text;
    EXPECT_EQ(to_dsl(parse_module(text)), text);
  }
}

TEST(Dsl, MutatedInputFailsCleanly) {
  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 1000; ++trial) {
    std::string text = to_dsl(random_tree(rng, 3));
    const std::size_t at = rng() % text.size();
    if (rng() % 2)
      text.erase(at, 1);
    else
      text.insert(at, 1, "(),x9 "[rng() % 6]);
    try {
      const auto e = parse_module(text);
      EXPECT_EQ(parse_module(to_dsl(e)), e);
    } catch (const ParseError& err) {
      EXPECT_GE(err.offset(), 1u);
      EXPECT_LE(err.offset(), text.size() + 1);
    } catch (const MixedRank&) {
    }
  }
}

TEST(Json, ModuleRoundTrip) {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 300; ++trial) {
    const auto e = random_tree(rng, 3);
    EXPECT_EQ(module_from_json(parse_json(to_json(e).dump())), e);
  }
  EXPECT_THROW(module_from_json(parse_json(R"({"op":"bogus"})")), SchemaError);
  EXPECT_THROW(module_from_json(parse_json(R"({"op":"sym","d":2})")), SchemaError);
}

TEST(Json, TupleRoundTrip) {
  auto f4 = make_field(FieldSpec{2, 2, {1, 1, 1}});
  for (const auto& f : {prime_field(3), f4})
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      const auto t = sample_cr(3, 2, f, seed);
      const auto back = tuple_from_json(parse_json(to_json(t).dump()));
      EXPECT_EQ(back, t);
      EXPECT_EQ(back.field()->spec(), f->spec());
    }
}

TEST(Json, TupleErrors) {
  EXPECT_THROW(parse_json("{\"n\": 2,"), ParseError);
  EXPECT_THROW(tuple_from_json(parse_json(R"({"n":2,"r":1,"field":{"p":2,"m":1,"modulus":[]}})")), SchemaError);
  EXPECT_THROW(tuple_from_json(parse_json(R"({"n":2,"r":1,"field":{"p":2,"m":1,"modulus":[]},"mats":[[0,1,0]]})")),
               SchemaError);
  EXPECT_THROW(tuple_from_json(parse_json(R"({"n":2,"r":1,"field":{"p":2,"m":1,"modulus":[]},"mats":[[0,7,0,0]]})")),
               SchemaError);
  EXPECT_THROW(tuple_from_json(parse_json(R"({"n":2,"r":1,"field":{"p":2,"m":1,"modulus":[]},"mats":[[1,0,0,1]]})")),
               InvalidTuple);
}

TEST(Json, SupportReportShape) {
  const auto rep = enumerate_support(ModuleExpr::def(2), 2, 1, prime_field(2));
  const Json j = to_json(rep);
  EXPECT_EQ(j["module"], "def(2)");
  EXPECT_EQ(j["rows"].size(), 4u);
  EXPECT_EQ(j["summary"]["total"], 4);
  EXPECT_EQ(j["summary"]["in_support_count"], 1);
  const std::string csv = to_csv(rep);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "index,tuple,jordan_type,in_support");
}

TEST(Verify, TinyGridPasses) {
  const auto rep = verify_grid(tiny_grid(), known_items(), VerifyOptions{7, 5, {}});
  EXPECT_TRUE(rep.all_passed());
  for (const auto& it : rep.items) {
    EXPECT_GT(it.checks, 0u) << it.item;
    EXPECT_FALSE(it.counterexample.has_value());
  }
}

TEST(Verify, CorruptedMembershipIsCaught) {
  // Negates the answer on direct sums and tensor products only.
  VerifyOptions opts;
  opts.membership = [](const ModuleExpr& e, const NilTuple& b) {
    const bool m = in_support(e, b);
    return e.op() == ModuleOp::Sum || e.op() == ModuleOp::Tensor ? !m : m;
  };
  const auto rep = verify_grid(tiny_grid(), {3, 4}, opts);
  EXPECT_FALSE(rep.all_passed());
  auto copy = rep;
  for (int item : {3, 4}) {
    const auto* r = copy.find(item);
    ASSERT_NE(r, nullptr);
    EXPECT_FALSE(r->passed) << item;
    ASSERT_TRUE(r->counterexample.has_value());
    EXPECT_TRUE(r->counterexample->tuple.has_value());
  }
}

TEST(Verify, UnknownItemThrows) {
  EXPECT_THROW(verify_grid(tiny_grid(), {9}), Error);
  EXPECT_THROW(grid_preset("huge"), Error);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_cli("expdeg --module 'def(2)' --p 2").code, 0);
  EXPECT_EQ(run_cli("expdeg --module 'sym(2, def(2)'").code, 2);
  EXPECT_EQ(run_cli("expdeg --module 'sum(def(2),def(3))'").code, 2);
  EXPECT_EQ(run_cli("bogus").code, 1);
  EXPECT_EQ(run_cli("cr enumerate --n 3 --r 2 --p 3 --budget 10").code, 3);
  EXPECT_EQ(run_cli("verify --items 3,4 --grid tiny").code, 0);
  EXPECT_EQ(run_cli("verify --items 12").code, 1);
  EXPECT_EQ(run_cli("jordan --module 'def(2)' --tuple /nonexistent/tuple.json").code, 1);
}

TEST(Cli, JordanFromTupleFile) {
  auto f = prime_field(2);
  const NilTuple t(f, 2, {Matrix::unit(ScalarRing(f), 2, 0, 1)});
  const std::string path = temp_path("tuple.json");
  std::ofstream(path) << to_json(t).dump();
  const auto res = run_cli("jordan --module 'sym(2,def(2))' --tuple " + path);
  ASSERT_EQ(res.code, 0);
  const Json j = parse_json(res.out);
  EXPECT_EQ(j["jordan_type"], Json::parse("[2,1]"));
  EXPECT_EQ(j["in_support"], true);
  std::ofstream(path) << "{\"n\": 2";
  EXPECT_EQ(run_cli("jordan --module 'def(2)' --tuple " + path).code, 2);
  std::filesystem::remove(path);
}

TEST(Cli, CrEnumerateCsv) {
  const auto res = run_cli("cr enumerate --n 2 --r 1 --p 2 --format csv");
  ASSERT_EQ(res.code, 0);
  std::istringstream in(res.out);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  ASSERT_EQ(lines.size(), 5u);
  EXPECT_EQ(lines[0], "index,tuple");
}

TEST(Cli, BudgetFromEnvironment) {
  const std::string cmd =
      "NILSUPPORT_BUDGET=5 " + std::string(NILSUPPORT_CLI_PATH) + " cr enumerate --n 2 --r 2 --p 3 >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  ASSERT_TRUE(WIFEXITED(status));
  EXPECT_EQ(WEXITSTATUS(status), 3);
}
