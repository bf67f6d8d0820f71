#pragma once

#include <functional>
#include <string>

namespace corrview::log {

enum class Level { kInfo, kWarning };

using Sink = std::function<void(Level, const std::string&)>;

// Replaces the process-wide sink and returns the previous one. The default
// sink writes warnings to stderr and drops info messages.
Sink set_sink(Sink sink);

void info(const std::string& message);
void warn(const std::string& message);

// Installs a sink for the lifetime of the guard.
class ScopedSink {
 public:
  explicit ScopedSink(Sink sink) : previous_(set_sink(std::move(sink))) {}
  ~ScopedSink() { set_sink(std::move(previous_)); }
  ScopedSink(const ScopedSink&) = delete;
  ScopedSink& operator=(const ScopedSink&) = delete;

 private:
  Sink previous_;
};

}  // namespace corrview::log
