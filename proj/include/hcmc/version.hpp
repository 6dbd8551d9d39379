#pragma once

namespace hcmc {
inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kToolName = "hcmc";
} // namespace hcmc
