#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "waitgo/decision.hpp"
#include "waitgo/rng.hpp"

using namespace waitgo;

namespace {

DecisionInputs inputs(double p, double penalty, double proc) {
  DecisionInputs in;
  in.p_hat = p;
  in.penalty_s = penalty;
  in.proc_s = proc;
  return in;
}

}  // namespace

TEST_CASE("expected savings: worked example") {
  // p = 0.6, penalty 14 s, proc 10 s: waiting saves 8.4 s, departing 4.0 s.
  const DecisionInputs in = inputs(0.6, 14.0, 10.0);
  CHECK(expected_saving(Decision::wait, in) == doctest::Approx(8.4).epsilon(1e-12));
  CHECK(expected_saving(Decision::go, in) == doctest::Approx(4.0).epsilon(1e-12));
  Policy learn = Policy::learn();
  CHECK(learn.decide(in) == Decision::wait);
}

TEST_CASE("decision flips at the indifference probability proc/(proc+penalty)") {
  const double penalty = 14.0, proc = 10.0;
  const double p_star = proc / (proc + penalty);  // 0.41666...
  CHECK(p_star == doctest::Approx(10.0 / 24.0).epsilon(1e-12));

  Policy learn = Policy::learn();
  CHECK(learn.decide(inputs(std::nextafter(p_star, 0.0), penalty, proc)) ==
        Decision::go);
  CHECK(learn.decide(inputs(std::nextafter(p_star, 1.0), penalty, proc)) ==
        Decision::wait);
}

TEST_CASE("ties favour waiting") {
  // p = proc/(proc+penalty) exactly: both savings equal 5.0.
  const DecisionInputs in = inputs(0.5, 10.0, 10.0);
  CHECK(expected_saving(Decision::wait, in) ==
        expected_saving(Decision::go, in));
  Policy learn = Policy::learn();
  CHECK(learn.decide(in) == Decision::wait);
  Policy oracle = Policy::oracle();
  CHECK(oracle.decide(in) == Decision::wait);
}

TEST_CASE("threshold property over a parameter grid") {
  Policy learn = Policy::learn();
  for (double penalty : {6.0, 14.0, 16.0, 25.0, 120.0}) {
    for (double proc : {2.0, 8.0, 10.0, 12.0}) {
      const double p_star = proc / (proc + penalty);
      for (int i = 0; i <= 100; ++i) {
        const double p = i / 100.0;
        const Decision d = learn.decide(inputs(p, penalty, proc));
        if (p < p_star) CHECK(d == Decision::go);
        if (p >= p_star) CHECK(d == Decision::wait);
      }
    }
  }
}

TEST_CASE("decisions are invariant to scaling both time quantities") {
  Policy learn = Policy::learn();
  for (double lambda : {1e-3, 0.1, 1.0, 7.0, 1e3}) {
    for (int i = 0; i <= 40; ++i) {
      const double p = i / 40.0;
      const Decision base = learn.decide(inputs(p, 16.0, 10.0));
      const Decision scaled =
          learn.decide(inputs(p, 16.0 * lambda, 10.0 * lambda));
      CHECK(base == scaled);
    }
  }
}

TEST_CASE("learning policy with no knowledge waits") {
  DecisionInputs in;
  in.penalty_s = 16.0;
  in.proc_s = 10.0;  // p_hat absent
  Policy learn = Policy::learn();
  CHECK(learn.decide(in) == Decision::wait);
}

TEST_CASE("oracle demands a probability") {
  DecisionInputs in;
  in.penalty_s = 16.0;
  in.proc_s = 10.0;
  Policy oracle = Policy::oracle();
  CHECK_THROWS_AS(oracle.decide(in), std::logic_error);
  CHECK_THROWS_AS(expected_saving(Decision::wait, in), std::logic_error);
}

TEST_CASE("fixed policies ignore the estimate") {
  Policy wait = Policy::always_wait();
  Policy go = Policy::always_go();
  for (double p : {0.0, 0.5, 1.0}) {
    CHECK(wait.decide(inputs(p, 16.0, 10.0)) == Decision::wait);
    CHECK(go.decide(inputs(p, 16.0, 10.0)) == Decision::go);
  }
}

TEST_CASE("coin-flip policy: reproducible per seed, roughly balanced") {
  Policy a = Policy::random(99);
  Policy b = Policy::random(99);
  Policy c = Policy::random(100);
  int gos_a = 0, gos_c = 0, agreements = 0;
  const DecisionInputs in = inputs(0.5, 16.0, 10.0);
  for (int i = 0; i < 2000; ++i) {
    const Decision da = a.decide(in);
    const Decision db = b.decide(in);
    const Decision dc = c.decide(in);
    CHECK(da == db);
    gos_a += da == Decision::go;
    gos_c += dc == Decision::go;
    agreements += da == dc;
  }
  CHECK(gos_a > 800);
  CHECK(gos_a < 1200);
  CHECK(gos_c > 800);
  CHECK(gos_c < 1200);
  CHECK(agreements < 1200);  // distinct seeds, distinct streams
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(inputs(1.5, 16.0, 10.0).validate(), std::invalid_argument);
  CHECK_THROWS_AS(inputs(-0.1, 16.0, 10.0).validate(), std::invalid_argument);
  CHECK_THROWS_AS(inputs(0.5, 0.0, 10.0).validate(), std::invalid_argument);
  CHECK_THROWS_AS(inputs(0.5, 16.0, 0.0).validate(), std::invalid_argument);
  CHECK_NOTHROW(inputs(0.0, 16.0, 10.0).validate());
  CHECK_NOTHROW(inputs(1.0, 16.0, 10.0).validate());
}
