#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace rtadapt {

enum class Infeasibility {
    HardOverload,
    FixedOverload,
    NoAdjustableCapacity,
    Overcompressed,
    UnboundedTaskPresent,
};

std::string_view to_string(Infeasibility reason);

/// Outcome of a period-assignment algorithm. No reason means feasible.
struct Verdict {
    std::optional<Infeasibility> reason;

    static Verdict feasible() { return {}; }
    static Verdict infeasible(Infeasibility r) { return {r}; }

    bool is_feasible() const noexcept { return !reason.has_value(); }
    bool operator==(const Verdict&) const = default;
};

/// "Feasible" or "Infeasible(<Reason>)".
std::string to_string(const Verdict& v);

}  // namespace rtadapt
