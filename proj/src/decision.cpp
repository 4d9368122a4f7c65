#include "waitgo/decision.hpp"

#include <stdexcept>

namespace waitgo {

void DecisionInputs::validate() const {
  if (p_hat && (!(*p_hat >= 0.0) || !(*p_hat <= 1.0)))
    throw std::invalid_argument("p_hat must lie in [0, 1]");
  if (!(penalty_s > 0.0)) throw std::invalid_argument("penalty_s must be > 0");
  if (!(proc_s > 0.0)) throw std::invalid_argument("proc_s must be > 0");
}

double expected_saving(Decision choice, const DecisionInputs& in) {
  in.validate();
  if (!in.p_hat)
    throw std::logic_error("expected_saving requires a probability estimate");
  return choice == Decision::wait ? *in.p_hat * in.penalty_s
                                  : (1.0 - *in.p_hat) * in.proc_s;
}

Decision Policy::decide(const DecisionInputs& in) {
  in.validate();
  switch (kind_) {
    case PolicyKind::wait:
      return Decision::wait;
    case PolicyKind::go:
      return Decision::go;
    case PolicyKind::random:
      return coin_.next_bit() ? Decision::go : Decision::wait;
    case PolicyKind::oracle:
      if (!in.p_hat)
        throw std::logic_error("oracle policy needs the true probability");
      break;
    case PolicyKind::learn:
      if (!in.p_hat) return Decision::wait;  // nothing learned yet
      break;
  }
  // Go only when strictly better: a tie favours the safe choice.
  return expected_saving(Decision::go, in) > expected_saving(Decision::wait, in)
             ? Decision::go
             : Decision::wait;
}

}  // namespace waitgo
