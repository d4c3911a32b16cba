#include "rds/diagnostics.hpp"

#include <iostream>
#include <mutex>

namespace rds {

namespace {

std::mutex sink_mutex;

WarningSink& sink() {
    static WarningSink current = [](const std::string& message) { std::cerr << "warning: " << message << '\n'; };
    return current;
}

}  // namespace

WarningSink set_warning_sink(WarningSink next) {
    std::lock_guard lock(sink_mutex);
    std::swap(sink(), next);
    return next;
}

void warn(const std::string& message) {
    std::lock_guard lock(sink_mutex);
    if (sink()) {
        sink()(message);
    }
}

}  // namespace rds
