#include "palintiple/scanner.hpp"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "palintiple/carry_graph.hpp"

namespace pal {

namespace {

std::string classical_status_for(std::int64_t b) {
  switch (b) {
    case 3:
    case 4:
    case 6:
      return "proved";
    case 5:
    case 7:
    case 9:
    case 13:
      return "conditional";
    case 10:
    case 12:
    case 16:
      return "conjectured";
    default:
      return "";
  }
}

std::optional<PairClass> pair_class_from_name(std::string_view s) {
  if (s == "symmetric-class") return PairClass::SymmetricClass;
  if (s == "shifted-symmetric-class") return PairClass::ShiftedSymmetricClass;
  if (s == "asymmetric-candidate") return PairClass::AsymmetricCandidate;
  return std::nullopt;
}

std::optional<PalintipleClass> class_from_name(std::string_view s) {
  if (s == "symmetric") return PalintipleClass::Symmetric;
  if (s == "shifted-symmetric") return PalintipleClass::ShiftedSymmetric;
  if (s == "asymmetric") return PalintipleClass::Asymmetric;
  return std::nullopt;
}

PalintipleClass expected_class(PairClass pc) {
  switch (pc) {
    case PairClass::SymmetricClass:
      return PalintipleClass::Symmetric;
    case PairClass::ShiftedSymmetricClass:
      return PalintipleClass::ShiftedSymmetric;
    case PairClass::AsymmetricCandidate:
      return PalintipleClass::Asymmetric;
  }
  return PalintipleClass::Asymmetric;
}

nlohmann::ordered_json opt_json(const std::optional<std::int64_t>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

}  // namespace

std::string_view scan_mode_name(ScanMode m) {
  return m == ScanMode::Congruence ? "congruence" : "enumerate-to-depth";
}

std::optional<ScanMode> scan_mode_from_name(std::string_view name) {
  if (name == "congruence") return ScanMode::Congruence;
  if (name == "enumerate-to-depth") return ScanMode::EnumerateToDepth;
  return std::nullopt;
}

Result<BaseReport> base_report(std::int64_t b, ScanMode mode, std::int64_t depth,
                               bool early_exit) {
  if (b < 3) return Error{Errc::BadParameters, "base_report requires b >= 3", -1};
  if (mode == ScanMode::EnumerateToDepth && depth < 2) {
    return Error{Errc::BadParameters, "enumerate-to-depth requires depth >= 2", -1};
  }
  BaseReport rep;
  rep.base = b;
  rep.mode = mode;
  rep.depth = mode == ScanMode::EnumerateToDepth ? depth : 0;
  rep.early_exit = early_exit;
  rep.classical_status = classical_status_for(b);
  bool shifted_exists = false;
  for (std::int64_t n = 2; n < b; ++n) {
    const PairClass pc = pair_class(n, b).value();
    const std::optional<std::int64_t> md = min_digits(n, b);
    rep.rows.push_back(BaseReportRow{n, pc, md.has_value(), md});
    if (!md) continue;
    if (pc == PairClass::ShiftedSymmetricClass) shifted_exists = true;
    if (pc == PairClass::AsymmetricCandidate && !rep.witness_n) {
      rep.witness_n = n;
      rep.witness_min_digits = md;
      if (early_exit) break;
    }
  }
  rep.is_symmetric_base = !rep.witness_n.has_value();
  rep.is_strongly_symmetric = rep.is_symmetric_base && !shifted_exists;
  if (mode == ScanMode::EnumerateToDepth) {
    for (const BaseReportRow& row : rep.rows) {
      if (!row.exists) continue;
      const PalintipleClass want = expected_class(row.pair_class);
      for (std::int64_t len = 2; len <= depth; ++len) {
        for (const PalintipleRecord& rec : enumerate_palintiples(row.n, b, len)) {
          if (rec.cls != want) {
            rep.mismatches.push_back(
                ClassMismatch{row.n, format_digits(rec.digits), row.pair_class, rec.cls});
          }
        }
      }
    }
  }
  return rep;
}

Result<std::map<std::int64_t, BaseReport>> read_checkpoint(const std::string& path) {
  std::map<std::int64_t, BaseReport> out;
  std::ifstream file(path, std::ios::binary);
  if (!file) return out;  // no checkpoint yet: fresh start
  std::ostringstream buf;
  buf << file.rdbuf();
  if (file.bad()) return Error{Errc::IoError, "cannot read checkpoint: " + path, -1};
  const std::string text = buf.str();
  std::size_t pos = 0;
  std::int64_t line_no = 0;
  while (pos < text.size()) {
    ++line_no;
    const std::size_t nl = text.find('\n', pos);
    const bool complete = nl != std::string::npos;
    const std::string line = text.substr(pos, complete ? nl - pos : std::string::npos);
    pos = complete ? nl + 1 : text.size();
    if (line.empty()) continue;
    bool ok = false;
    const nlohmann::ordered_json j = nlohmann::ordered_json::parse(line, nullptr, false);
    if (!j.is_discarded()) {
      try {
        BaseReport rep;
        from_json(j, rep);
        out[rep.base] = std::move(rep);
        ok = true;
      } catch (const std::exception&) {
        ok = false;
      }
    }
    if (!ok) {
      // A torn final line comes from an interrupted write; drop it and let the
      // scan recompute that base. Anything else is real corruption.
      if (!complete) break;
      return Error{Errc::CheckpointCorrupt,
                   "checkpoint line " + std::to_string(line_no) + " is not a base report: " + path,
                   line_no};
    }
  }
  return out;
}

Result<ScanSummary> scan_bases(const ScanOptions& opts) {
  if (opts.from < 3 || opts.from > opts.to) {
    return Error{Errc::BadParameters, "scan range requires 3 <= from <= to", -1};
  }
  if (opts.mode == ScanMode::EnumerateToDepth && opts.depth < 2) {
    return Error{Errc::BadParameters, "enumerate-to-depth requires depth >= 2", -1};
  }

  std::map<std::int64_t, BaseReport> done;
  if (!opts.checkpoint_path.empty()) {
    auto resumed = read_checkpoint(opts.checkpoint_path);
    if (!resumed.ok()) return resumed.error();
    done = std::move(resumed.value());
    // A torn final line (interrupted write, no trailing newline) is dropped on
    // read; cut it from the file too so appended lines do not fuse with it.
    std::ifstream tail(opts.checkpoint_path, std::ios::binary);
    if (tail) {
      std::ostringstream buf;
      buf << tail.rdbuf();
      const std::string text = buf.str();
      if (!text.empty() && text.back() != '\n') {
        const std::size_t nl = text.find_last_of('\n');
        const std::uintmax_t keep = nl == std::string::npos ? 0 : nl + 1;
        std::error_code ec;
        std::filesystem::resize_file(opts.checkpoint_path, keep, ec);
        if (ec) {
          return Error{Errc::IoError,
                       "cannot truncate torn checkpoint line: " + opts.checkpoint_path, -1};
        }
      }
    }
  }
  std::vector<std::int64_t> todo;
  for (std::int64_t b = opts.from; b <= opts.to; ++b) {
    if (done.find(b) == done.end()) todo.push_back(b);
  }

  std::ofstream checkpoint;
  if (!opts.checkpoint_path.empty() && !todo.empty()) {
    checkpoint.open(opts.checkpoint_path, std::ios::app | std::ios::binary);
    if (!checkpoint) {
      return Error{Errc::IoError, "cannot open checkpoint for append: " + opts.checkpoint_path,
                   -1};
    }
  }

  const int jobs = std::max(1, opts.jobs);
  std::vector<std::optional<BaseReport>> slots(todo.size());
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::condition_variable ready;
  std::exception_ptr failure;

  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= todo.size()) return;
      try {
        Result<BaseReport> rep = base_report(todo[i], opts.mode, opts.depth, opts.early_exit);
        std::lock_guard<std::mutex> lock(mu);
        slots[i] = std::move(rep.value());  // inputs were validated: always ok
        ready.notify_all();
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!failure) failure = std::current_exception();
        ready.notify_all();
        return;
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(jobs));
  for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);

  // Single writer appends completed reports in base order, flushing per line,
  // so an interrupted scan loses at most the line being written.
  bool write_failed = false;
  {
    std::unique_lock<std::mutex> lock(mu);
    for (std::size_t i = 0; i < slots.size(); ++i) {
      ready.wait(lock, [&] { return slots[i].has_value() || failure; });
      if (failure) break;
      if (checkpoint.is_open() && !write_failed) {
        nlohmann::ordered_json j;
        to_json(j, *slots[i]);
        checkpoint << j.dump() << '\n' << std::flush;
        if (!checkpoint) write_failed = true;
      }
    }
  }
  for (std::thread& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  if (write_failed) {
    return Error{Errc::IoError, "checkpoint write failed: " + opts.checkpoint_path, -1};
  }

  for (std::size_t i = 0; i < todo.size(); ++i) done[todo[i]] = std::move(*slots[i]);

  ScanSummary summary;
  summary.from = opts.from;
  summary.to = opts.to;
  summary.mode = opts.mode;
  summary.depth = opts.mode == ScanMode::EnumerateToDepth ? opts.depth : 0;
  for (std::int64_t b = opts.from; b <= opts.to; ++b) {
    const BaseReport& rep = done.at(b);
    if (rep.is_symmetric_base) summary.symmetric_bases.push_back(b);
    if (rep.is_strongly_symmetric) {
      summary.strongly_symmetric_bases.push_back(b);
      if (b > 3 && !is_prime(b + 1)) summary.prime_law_violations.push_back(b);
    }
    summary.reports.push_back(rep);
  }
  return summary;
}

bool is_prime(std::int64_t m) {
  if (m < 2) return false;
  for (std::int64_t d = 2; d * d <= m; ++d) {
    if (m % d == 0) return false;
  }
  return true;
}

std::vector<MinimalRow> figure1_dataset(std::int64_t b_from, std::int64_t b_to) {
  if (b_from < 3 || b_from > b_to) {
    throw std::invalid_argument("figure1_dataset requires 3 <= b_from <= b_to");
  }
  std::vector<MinimalRow> rows;
  for (std::int64_t b = b_from; b <= b_to; ++b) {
    for (std::int64_t n = 2; n < b; ++n) {
      const std::optional<std::int64_t> md = min_digits(n, b);
      if (!md) continue;
      for (const PalintipleRecord& rec : enumerate_palintiples(n, b, *md)) {
        rows.push_back(MinimalRow{b, n, *md, rec.digits.digits.front(), rec.digits.digits.back(),
                                  format_digits(rec.digits)});
      }
    }
  }
  return rows;
}

std::string figure1_csv(const std::vector<MinimalRow>& rows) {
  std::string out = "base,n,digit_count,d0,dk,digits\n";
  for (const MinimalRow& r : rows) {
    out += std::to_string(r.base);
    out += ',';
    out += std::to_string(r.n);
    out += ',';
    out += std::to_string(r.digit_count);
    out += ',';
    out += std::to_string(r.d0);
    out += ',';
    out += std::to_string(r.dk);
    out += ',';
    out += r.digits;
    out += '\n';
  }
  return out;
}

std::string scan_csv(const ScanSummary& summary) {
  std::string out = "base,is_symmetric,is_strongly_symmetric,witness_n,witness_min_digits\n";
  for (const BaseReport& r : summary.reports) {
    out += std::to_string(r.base);
    out += r.is_symmetric_base ? ",true" : ",false";
    out += r.is_strongly_symmetric ? ",true" : ",false";
    out += ',';
    if (r.witness_n) out += std::to_string(*r.witness_n);
    out += ',';
    if (r.witness_min_digits) out += std::to_string(*r.witness_min_digits);
    out += '\n';
  }
  return out;
}

void to_json(nlohmann::ordered_json& j, const BaseReport& r) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const BaseReportRow& row : r.rows) {
    rows.push_back(nlohmann::ordered_json{{"n", row.n},
                                          {"pair_class", pair_class_name(row.pair_class)},
                                          {"exists", row.exists},
                                          {"min_digits", opt_json(row.min_digits)}});
  }
  nlohmann::ordered_json mismatches = nlohmann::ordered_json::array();
  for (const ClassMismatch& m : r.mismatches) {
    mismatches.push_back(nlohmann::ordered_json{{"n", m.n},
                                                {"digits", m.digits},
                                                {"pair_class", pair_class_name(m.pair_class)},
                                                {"carry_class", class_name(m.carry_class)}});
  }
  j = nlohmann::ordered_json{{"base", r.base},
                             {"mode", scan_mode_name(r.mode)},
                             {"depth", r.depth},
                             {"early_exit", r.early_exit},
                             {"rows", std::move(rows)},
                             {"is_symmetric_base", r.is_symmetric_base},
                             {"is_strongly_symmetric", r.is_strongly_symmetric},
                             {"witness_n", opt_json(r.witness_n)},
                             {"witness_min_digits", opt_json(r.witness_min_digits)},
                             {"mismatches", std::move(mismatches)},
                             {"classical_status", r.classical_status}};
}

void from_json(const nlohmann::ordered_json& j, BaseReport& r) {
  r = BaseReport{};
  r.base = j.at("base").get<std::int64_t>();
  const auto mode = scan_mode_from_name(j.at("mode").get<std::string>());
  if (!mode) throw std::invalid_argument("unknown scan mode");
  r.mode = *mode;
  r.depth = j.at("depth").get<std::int64_t>();
  r.early_exit = j.at("early_exit").get<bool>();
  for (const auto& row : j.at("rows")) {
    BaseReportRow out;
    out.n = row.at("n").get<std::int64_t>();
    const auto pc = pair_class_from_name(row.at("pair_class").get<std::string>());
    if (!pc) throw std::invalid_argument("unknown pair class");
    out.pair_class = *pc;
    out.exists = row.at("exists").get<bool>();
    if (!row.at("min_digits").is_null()) {
      out.min_digits = row.at("min_digits").get<std::int64_t>();
    }
    r.rows.push_back(std::move(out));
  }
  r.is_symmetric_base = j.at("is_symmetric_base").get<bool>();
  r.is_strongly_symmetric = j.at("is_strongly_symmetric").get<bool>();
  if (!j.at("witness_n").is_null()) r.witness_n = j.at("witness_n").get<std::int64_t>();
  if (!j.at("witness_min_digits").is_null()) {
    r.witness_min_digits = j.at("witness_min_digits").get<std::int64_t>();
  }
  for (const auto& m : j.at("mismatches")) {
    ClassMismatch out;
    out.n = m.at("n").get<std::int64_t>();
    out.digits = m.at("digits").get<std::string>();
    const auto pc = pair_class_from_name(m.at("pair_class").get<std::string>());
    const auto cc = class_from_name(m.at("carry_class").get<std::string>());
    if (!pc || !cc) throw std::invalid_argument("unknown class name");
    out.pair_class = *pc;
    out.carry_class = *cc;
    r.mismatches.push_back(std::move(out));
  }
  r.classical_status = j.at("classical_status").get<std::string>();
}

void to_json(nlohmann::ordered_json& j, const ScanSummary& s) {
  nlohmann::ordered_json reports = nlohmann::ordered_json::array();
  for (const BaseReport& r : s.reports) {
    nlohmann::ordered_json one;
    to_json(one, r);
    reports.push_back(std::move(one));
  }
  j = nlohmann::ordered_json{{"from", s.from},
                             {"to", s.to},
                             {"mode", scan_mode_name(s.mode)},
                             {"depth", s.depth},
                             {"symmetric_bases", s.symmetric_bases},
                             {"strongly_symmetric_bases", s.strongly_symmetric_bases},
                             {"prime_law_violations", s.prime_law_violations},
                             {"reports", std::move(reports)}};
}

void to_json(nlohmann::ordered_json& j, const MinimalRow& r) {
  j = nlohmann::ordered_json{{"base", r.base},   {"n", r.n},   {"digit_count", r.digit_count},
                             {"d0", r.d0},       {"dk", r.dk}, {"digits", r.digits}};
}

}  // namespace pal
