#include <doctest.h>

#include "tvlab/boxall.hpp"

using namespace tvlab;

namespace {

ModuleAction scalar_action(const FiniteModule& a, long s) {
  ModuleAction act;
  act.generators.push_back(IntMat(int_identity(a.rank()) * Int(s)));
  act.validate(a);
  return act;
}

IntVec elem(std::initializer_list<long> vals) {
  IntVec v(static_cast<Eigen::Index>(vals.size()));
  Eigen::Index i = 0;
  for (long x : vals) v(i++) = x;
  return v;
}

}  // namespace

TEST_CASE("module parsing and arithmetic") {
  FiniteModule a = FiniteModule::parse("3^2,3^1");
  CHECK(a.rank() == 2);
  CHECK(a.order(0) == 9);
  CHECK(a.module_order() == 27);
  CHECK(a.is_zero(a.scalar(9, elem({1, 1}))));
  CHECK(a.in_torsion(elem({3, 1}), 1));
  CHECK(!a.in_torsion(elem({1, 0}), 1));
  CHECK_THROWS_AS(FiniteModule::parse("3^2,5^1"), std::invalid_argument);
}

TEST_CASE("action validation") {
  FiniteModule a = FiniteModule::parse("3^2,3^1");
  // Well-defined: entry (0,1) needs a factor of 3.
  IntMat bad = int_identity(2);
  bad(0, 1) = 1;
  ModuleAction act;
  act.generators.push_back(bad);
  CHECK_THROWS_AS(act.validate(a), std::invalid_argument);
  IntMat good = int_identity(2);
  good(0, 1) = 3;
  act.generators[0] = good;
  act.validate(a);
  // Non-invertible matrices rejected.
  IntMat sing = int_identity(2) * Int(3);
  act.generators[0] = sing;
  CHECK_THROWS_AS(act.validate(a), std::invalid_argument);
  // JSON loading.
  ModuleAction j = ModuleAction::from_json_text(FiniteModule::parse("3^2"), "[[[4]]]");
  CHECK(j.generators.size() == 1);
  CHECK(j.generators[0](0, 0) == 4);
}

TEST_CASE("hypothesis checks") {
  FiniteModule z9 = FiniteModule::parse("3^2");
  CHECK(check_hypotheses(z9, scalar_action(z9, 4)));
  CHECK(!check_hypotheses(z9, scalar_action(z9, 2)));
  FiniteModule z8 = FiniteModule::parse("2^3");
  CHECK(check_hypotheses(z8, scalar_action(z8, 5)));
  CHECK(!check_hypotheses(z8, scalar_action(z8, 3)));
}

TEST_CASE("worked constructions") {
  FiniteModule z9 = FiniteModule::parse("3^2");
  ModuleAction a9 = scalar_action(z9, 4);
  BoxallWitness w9 = boxall_construct(z9, a9, elem({1}));
  CHECK(w9.n == 1);
  CHECK(w9.sigma(0, 0) == 4);
  CHECK(w9.x(0) == 3);

  FiniteModule z27 = FiniteModule::parse("3^3");
  ModuleAction a27 = scalar_action(z27, 4);
  BoxallWitness w27 = boxall_construct(z27, a27, elem({1}));
  CHECK(w27.n == 2);
  CHECK(w27.sigma(0, 0) == 10);
  CHECK(w27.x(0) == 9);
  CHECK(w27.power == 3);

  // Fixed Q has no witness.
  CHECK_THROWS_AS(boxall_construct(z9, a9, elem({3})), std::domain_error);
  // Trivial action: every Q is fixed.
  CHECK_THROWS_AS(boxall_construct(z9, scalar_action(z9, 1), elem({1})), std::domain_error);
  // Hypothesis violation is rejected.
  CHECK_THROWS_AS(boxall_construct(z9, scalar_action(z9, 2), elem({1})), std::domain_error);
}

TEST_CASE("oracle enumeration") {
  FiniteModule z9 = FiniteModule::parse("3^2");
  ModuleAction a9 = scalar_action(z9, 4);
  auto entries = boxall_oracle(z9, a9, elem({1}));
  REQUIRE(entries.size() == 2);
  bool saw4 = false, saw7 = false;
  for (const auto& e : entries) {
    if (e.sigma(0, 0) == 4) {
      saw4 = true;
      CHECK(e.x(0) == 3);
    }
    if (e.sigma(0, 0) == 7) {
      saw7 = true;
      CHECK(e.x(0) == 6);
    }
  }
  CHECK(saw4);
  CHECK(saw7);
  CHECK(boxall_oracle(z9, scalar_action(z9, 1), elem({1})).empty());
  FiniteModule z3 = FiniteModule::parse("3^1");
  CHECK(boxall_oracle(z3, scalar_action(z3, 1), elem({1})).empty());
  CHECK(enumerate_group(z9, a9, 100).size() == 3);  // 4, 7, 1 mod 9
}
