#include "corrview/log.hpp"

#include <iostream>
#include <mutex>

namespace corrview::log {
namespace {

std::mutex& sink_mutex() {
  static std::mutex m;
  return m;
}

void default_sink(Level level, const std::string& message) {
  if (level == Level::kWarning) std::cerr << "warning: " << message << '\n';
}

Sink& current() {
  static Sink sink = default_sink;
  return sink;
}

void emit(Level level, const std::string& message) {
  std::lock_guard<std::mutex> lock(sink_mutex());
  if (current()) current()(level, message);
}

}  // namespace

Sink set_sink(Sink sink) {
  std::lock_guard<std::mutex> lock(sink_mutex());
  Sink previous = std::move(current());
  current() = sink ? std::move(sink) : Sink(default_sink);
  return previous;
}

void info(const std::string& message) { emit(Level::kInfo, message); }
void warn(const std::string& message) { emit(Level::kWarning, message); }

}  // namespace corrview::log
