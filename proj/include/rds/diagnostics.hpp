#pragma once

#include <functional>
#include <string>

namespace rds {

using WarningSink = std::function<void(const std::string&)>;

// Replaces the process-wide warning sink and returns the previous one.
// The default sink writes "warning: <msg>" to stderr. Passing an empty
// function silences warnings.
WarningSink set_warning_sink(WarningSink sink);

void warn(const std::string& message);

}  // namespace rds
