#pragma once

// Whole-base surveys: which multipliers admit palintiples, symmetric-base
// verdicts, range scans with JSON-lines checkpointing and a worker pool, and
// the minimal-palintiple dataset behind the d0-versus-dk scatter plot.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "palintiple/class_theory.hpp"
#include "palintiple/digit_core.hpp"

namespace pal {

// congruence: label each n by pair_class only (the congruence conditions).
// enumerate-to-depth: additionally classify the carries of every enumerated
// palintiple up to `depth` digits and report any palintiple whose carry class
// disagrees with its pair class.
enum class ScanMode { Congruence, EnumerateToDepth };

std::string_view scan_mode_name(ScanMode m);
std::optional<ScanMode> scan_mode_from_name(std::string_view name);

struct BaseReportRow {
  std::int64_t n = 0;
  PairClass pair_class = PairClass::AsymmetricCandidate;
  bool exists = false;
  std::optional<std::int64_t> min_digits;

  bool operator==(const BaseReportRow&) const = default;
};

// A palintiple whose carry class disagrees with its pair's congruence class
// (enumerate-to-depth mode; none are expected to exist).
struct ClassMismatch {
  std::int64_t n = 0;
  std::string digits;
  PairClass pair_class = PairClass::AsymmetricCandidate;
  PalintipleClass carry_class = PalintipleClass::Asymmetric;

  bool operator==(const ClassMismatch&) const = default;
};

struct BaseReport {
  std::int64_t base = 0;
  ScanMode mode = ScanMode::Congruence;
  std::int64_t depth = 0;   // digit bound, nonzero only in enumerate-to-depth mode
  bool early_exit = false;  // row loop stopped at the first witness
  std::vector<BaseReportRow> rows;
  bool is_symmetric_base = false;      // no asymmetric-candidate n admits a palintiple
  bool is_strongly_symmetric = false;  // symmetric and no shifted-class n admits one
  std::optional<std::int64_t> witness_n;  // first asymmetric-candidate n with palintiples
  std::optional<std::int64_t> witness_min_digits;
  std::vector<ClassMismatch> mismatches;
  // Published status of the only-symmetric verdict for this base: "proved"
  // (3, 4, 6), "conditional" on the carry-divisibility conjecture (5, 7, 9,
  // 13), "conjectured" (10, 12, 16), empty otherwise. The tool's own verdict
  // comes from graph reachability and is unconditional.
  std::string classical_status;

  bool operator==(const BaseReport&) const = default;
};

struct ScanOptions {
  std::int64_t from = 3;
  std::int64_t to = 20;
  ScanMode mode = ScanMode::Congruence;
  std::int64_t depth = 8;  // used by enumerate-to-depth mode only
  int jobs = 1;
  bool early_exit = true;       // stop each base's row loop at the first witness
  std::string checkpoint_path;  // empty: no checkpointing
};

struct ScanSummary {
  std::int64_t from = 0;
  std::int64_t to = 0;
  ScanMode mode = ScanMode::Congruence;
  std::int64_t depth = 0;
  std::vector<BaseReport> reports;  // ascending base, one per base in [from, to]
  std::vector<std::int64_t> symmetric_bases;
  std::vector<std::int64_t> strongly_symmetric_bases;
  // Strongly symmetric bases b > 3 whose b+1 is composite. None can exist
  // (the contrapositive construction exhibits a shifted-symmetric palintiple
  // whenever b+1 is composite), so a nonempty list is a fatal inconsistency.
  std::vector<std::int64_t> prime_law_violations;
};

Result<BaseReport> base_report(std::int64_t b, ScanMode mode, std::int64_t depth = 8,
                               bool early_exit = true);

// Scans [from, to], one worker task per base, reports appended to the
// checkpoint in base order (one JSON line each, flushed per line). Resuming
// skips bases already present in the checkpoint. A trailing partial line
// (interrupted write) is dropped and recomputed; any other unparseable line
// is CheckpointCorrupt.
Result<ScanSummary> scan_bases(const ScanOptions& opts);

Result<std::map<std::int64_t, BaseReport>> read_checkpoint(const std::string& path);

bool is_prime(std::int64_t m);

// One minimal (n, b)-palintiple: digit_count = min_digits(n, b) and the
// endpoint law dk = n * d0 + c_k bands the scatter plot into strips.
struct MinimalRow {
  std::int64_t base = 0;
  std::int64_t n = 0;
  std::int64_t digit_count = 0;
  std::int64_t d0 = 0;
  std::int64_t dk = 0;
  std::string digits;

  bool operator==(const MinimalRow&) const = default;
};

// Every palintiple at the minimal digit count of every (n, b) with
// b_from <= b <= b_to, ordered by (b, n, digits).
std::vector<MinimalRow> figure1_dataset(std::int64_t b_from, std::int64_t b_to);

std::string figure1_csv(const std::vector<MinimalRow>& rows);
std::string scan_csv(const ScanSummary& summary);

void to_json(nlohmann::ordered_json& j, const BaseReport& r);
void from_json(const nlohmann::ordered_json& j, BaseReport& r);
void to_json(nlohmann::ordered_json& j, const ScanSummary& s);
void to_json(nlohmann::ordered_json& j, const MinimalRow& r);

}  // namespace pal
