#include "rtadapt/verdict.hpp"

namespace rtadapt {

std::string_view to_string(Infeasibility reason) {
    switch (reason) {
        case Infeasibility::HardOverload: return "HardOverload";
        case Infeasibility::FixedOverload: return "FixedOverload";
        case Infeasibility::NoAdjustableCapacity: return "NoAdjustableCapacity";
        case Infeasibility::Overcompressed: return "Overcompressed";
        case Infeasibility::UnboundedTaskPresent: return "UnboundedTaskPresent";
    }
    return "Unknown";
}

std::string to_string(const Verdict& v) {
    if (v.is_feasible()) return "Feasible";
    return "Infeasible(" + std::string(to_string(*v.reason)) + ")";
}

}  // namespace rtadapt
