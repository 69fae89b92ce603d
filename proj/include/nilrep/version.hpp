#pragma once

namespace nilrep {

inline constexpr const char* kVersionString = "nilrep 1.0.0";

} // namespace nilrep
