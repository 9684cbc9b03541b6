#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace coopcache {

using TraceRecord = nlohmann::ordered_json;

/// Receives one JSON object per protocol event or request. Every record
/// carries "tick" as its first field.
class TraceSink {
 public:
  virtual ~TraceSink() = default;
  virtual void write(const TraceRecord& record) = 0;
};

/// Writes records as JSON lines.
class JsonLinesTrace final : public TraceSink {
 public:
  explicit JsonLinesTrace(std::ostream& out) : out_(out) {}
  void write(const TraceRecord& record) override { out_ << record.dump() << '\n'; }

 private:
  std::ostream& out_;
};

/// Keeps records in memory; handy for tests.
class MemoryTrace final : public TraceSink {
 public:
  void write(const TraceRecord& record) override { records.push_back(record); }
  std::vector<TraceRecord> records;
};

}  // namespace coopcache
