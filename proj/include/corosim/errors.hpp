#pragma once

#include <stdexcept>
#include <string>

namespace corosim {

enum class Errc {
    InvalidTier,
    BindConflict,
    DoubleBind,
    CausalityViolation,
    EventBudgetExceeded,
    TraceViolation,
    PlanMismatch,
    InvalidSplit,
    ParseError,
    ConfigError,
};

const char* errc_name(Errc code);

class SimError : public std::runtime_error {
  public:
    SimError(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const { return code_; }

  private:
    Errc code_;
};

}  // namespace corosim
