#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "halcece/ingestion.hpp"
#include "halcece/metrics.hpp"
#include "halcece/role_edits.hpp"

namespace halcece {

enum class EvalMode { Objects, Roles, Both };

std::optional<EvalMode> parse_mode(std::string_view name);
const char* to_string(EvalMode mode);

struct RunOptions {
  EvalMode mode = EvalMode::Both;
  bool dedupe = false;
  bool strict = false;
  RoleConfig role_config{};
  std::size_t threads = 0;  // 0 -> hardware concurrency
};

struct RunResult {
  std::vector<InstanceReport> reports;  // sorted by instance id
  std::vector<std::string> warnings;    // skipped instances, input order
};

/// Evaluates every record: maps both sides onto the taxonomy, derives the
/// object edit plan (plus the role plan outside objects-only mode) and the
/// per-instance report, with CHAIR filled from the plan's hallucinated set
/// and linguistic scores present iff the record carries a caption text and
/// references. Records are processed by a worker pool; reports and warnings
/// are independent of thread scheduling. A record that fails to evaluate
/// aborts a strict run (std::runtime_error) and becomes a warning otherwise.
RunResult run_dataset(const Taxonomy& t,
                      const std::vector<InstanceRecord>& records,
                      const Overrides& overrides, const RunOptions& options);

/// One record evaluated and rendered as a readable edit trace: both concept
/// lists, every object edit with phenomenon, cost and Wu-Palmer similarity
/// where a pair was matched, insert suggestions, and the role plan with
/// causes.
std::string explain_instance(const Taxonomy& t, const InstanceRecord& record,
                             const Overrides& overrides,
                             const RunOptions& options);

}  // namespace halcece
