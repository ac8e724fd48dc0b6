#include "corosim/errors.hpp"

namespace corosim {

const char* errc_name(Errc code) {
    switch (code) {
        case Errc::InvalidTier: return "InvalidTier";
        case Errc::BindConflict: return "BindConflict";
        case Errc::DoubleBind: return "DoubleBind";
        case Errc::CausalityViolation: return "CausalityViolation";
        case Errc::EventBudgetExceeded: return "EventBudgetExceeded";
        case Errc::TraceViolation: return "TraceViolation";
        case Errc::PlanMismatch: return "PlanMismatch";
        case Errc::InvalidSplit: return "InvalidSplit";
        case Errc::ParseError: return "ParseError";
        case Errc::ConfigError: return "ConfigError";
    }
    return "UnknownError";
}

}  // namespace corosim
