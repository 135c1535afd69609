#include "palintiple/cli.hpp"

#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "palintiple/carry_graph.hpp"
#include "palintiple/class_theory.hpp"
#include "palintiple/digit_core.hpp"
#include "palintiple/harness.hpp"
#include "palintiple/scanner.hpp"

namespace pal {

namespace {

using nlohmann::ordered_json;

int exit_for(Errc code) {
  switch (code) {
    case Errc::BadParameters:
      return 1;
    case Errc::CheckpointCorrupt:
    case Errc::IoError:
      return 3;
    default:
      return 2;
  }
}

int fail(std::ostream& err, const Error& e) {
  err << "error (" << errc_name(e.code) << "): " << e.message;
  if (e.index >= 0) err << " [index " << e.index << "]";
  err << "\n";
  return exit_for(e.code);
}

int fail_usage(std::ostream& err, const std::string& message) {
  err << "error (bad-parameters): " << message << "\n";
  return 1;
}

void emit(std::ostream& out, const ordered_json& j) { out << j.dump(2) << "\n"; }

// Digits arrive in the "." serialization; --value additionally accepts a bare
// integer (one decimal character per digit), which is unambiguous only for
// bases up to 10.
Result<DigitString> parse_digit_arg(const std::string& text, std::int64_t base, bool value_flag) {
  if (base <= 2) return Error{Errc::BadParameters, "base must be > 2", -1};
  if (!value_flag) return parse_digits(text, base);
  if (base > 10) return Error{Errc::BadParameters, "--value accepts bases up to 10 only", -1};
  if (text.empty()) return Error{Errc::BadParameters, "empty digit string", -1};
  std::vector<std::int64_t> msd;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (ch < '0' || ch > '9') {
      return Error{Errc::BadParameters, "--value expects decimal digits only",
                   static_cast<std::int64_t>(i)};
    }
    const std::int64_t d = ch - '0';
    if (d >= base) {
      return Error{Errc::DigitOutOfRange, "digit " + std::to_string(d) + " not below base",
                   static_cast<std::int64_t>(i)};
    }
    msd.push_back(d);
  }
  return DigitString::from_msd(base, std::move(msd));
}

ordered_json record_json(const PalintipleRecord& rec) {
  ordered_json j;
  j["n"] = rec.multiplier;
  j["b"] = rec.digits.base;
  j["digits"] = format_digits(rec.digits);
  const std::optional<std::uint64_t> value = digit_string_value(rec.digits);
  j["value"] = value ? ordered_json(*value) : ordered_json(nullptr);
  j["carries"] = rec.carries.carries;
  j["class"] = class_name(rec.cls);
  return j;
}

ordered_json graph_json(const CarryPairGraph& g, bool full) {
  ordered_json nodes = ordered_json::array();
  for (const CarryPairNode& v : g.nodes()) nodes.push_back({v.lo, v.hi});
  ordered_json edges = ordered_json::array();
  for (std::size_t from = 0; from < g.nodes().size(); ++from) {
    for (const CarryPairGraph::Arc& arc : g.arcs()[from]) {
      const CarryPairNode& u = g.nodes()[from];
      const CarryPairNode& v = g.nodes()[arc.to];
      edges.push_back(ordered_json{{"from", {u.lo, u.hi}},
                                   {"to", {v.lo, v.hi}},
                                   {"digits", {arc.label.lo_digit, arc.label.hi_digit}}});
    }
  }
  return ordered_json{{"n", g.multiplier()},       {"b", g.base()},
                      {"full", full},              {"node_count", g.nodes().size()},
                      {"edge_count", g.edge_count()}, {"nodes", std::move(nodes)},
                      {"edges", std::move(edges)}};
}

int write_payload(const std::string& path, const std::string& payload, std::ostream& out,
                  std::ostream& err) {
  if (path.empty()) {
    out << payload;
    return 0;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    err << "error (io-error): cannot open output file: " << path << "\n";
    return 3;
  }
  file << payload;
  file.flush();
  if (!file) {
    err << "error (io-error): write failed: " << path << "\n";
    return 3;
  }
  return 0;
}

void print_report(std::ostream& out, const ConjectureReport& r) {
  out << "conjecture: " << r.conjecture << "\n";
  out << "bounds: b_max=" << r.b_max << " d_max=" << r.d_max << "\n";
  if (r.n != 0) out << "n: " << r.n << "\n";
  out << "checked: " << r.checked << "\n";
  out << "verdict: " << r.verdict() << "\n";
  for (const Counterexample& c : r.counterexamples) {
    out << "counterexample: n=" << c.n << " b=" << c.base << " digits=" << c.digits
        << " index=" << c.failing_index << " detail=" << c.detail << "\n";
  }
  if (!r.observations.empty()) {
    out << "observations: " << r.observations.size() << " (" << r.note << ")\n";
  }
}

std::string flag_text(const std::optional<bool>& v) {
  if (!v) return "vacuous";
  return *v ? "true" : "false";
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"palintiple toolkit: numbers that are an integer multiple of their digit reversal"};
  app.require_subcommand(1);

  // verify
  std::int64_t v_n = 0, v_b = 0;
  std::string v_digits;
  bool v_value = false, v_json = false;
  CLI::App* verify = app.add_subcommand("verify", "check p = n * reverse(p) and print the class");
  verify->add_option("n", v_n, "multiplier")->required();
  verify->add_option("b", v_b, "base")->required();
  verify->add_option("digits", v_digits, "digit string, most significant first, '.'-separated")
      ->required();
  verify->add_flag("--value", v_value, "digits argument is a bare integer (bases up to 10)");
  verify->add_flag("--json", v_json, "emit the verified record as JSON");

  // classify
  std::int64_t c_n = 0, c_b = 0;
  std::string c_digits;
  bool c_value = false, c_json = false;
  CLI::App* classify = app.add_subcommand("classify", "verify and print carries plus class");
  classify->add_option("n", c_n, "multiplier")->required();
  classify->add_option("b", c_b, "base")->required();
  classify->add_option("digits", c_digits, "digit string, most significant first")->required();
  classify->add_flag("--value", c_value, "digits argument is a bare integer (bases up to 10)");
  classify->add_flag("--json", c_json, "emit the verified record as JSON");

  // pair-class
  std::int64_t pc_n = 0, pc_b = 0;
  bool pc_json = false;
  CLI::App* pair_cls = app.add_subcommand("pair-class", "congruence class of the (n, b) pair");
  pair_cls->add_option("n", pc_n, "multiplier")->required();
  pair_cls->add_option("b", pc_b, "base")->required();
  pair_cls->add_flag("--json", pc_json, "emit JSON");

  // construct shifted / construct symmetric
  CLI::App* construct = app.add_subcommand("construct", "build palintiples from closed forms");
  construct->require_subcommand(1);
  std::int64_t cs_n = 0, cs_b = 0, cs_count = 2, cs_solution = 0;
  bool cs_json = false;
  CLI::App* cshift = construct->add_subcommand(
      "shifted", "constant-carry shifted-symmetric palintiple from a congruence solution");
  cshift->add_option("n", cs_n, "multiplier")->required();
  cshift->add_option("b", cs_b, "base")->required();
  cshift->add_option("--count", cs_count, "digit count (default 2)");
  cshift->add_option("--solution", cs_solution, "congruence solution to use (default smallest)");
  cshift->add_flag("--json", cs_json, "emit the record as JSON");
  std::int64_t cy_n = 0, cy_b = 0, cy_len = 0;
  bool cy_json = false;
  CLI::App* csym = construct->add_subcommand(
      "symmetric", "symmetric palintiple from the first palindromic bit sequence");
  csym->add_option("n", cy_n, "multiplier")->required();
  csym->add_option("b", cy_b, "base")->required();
  csym->add_option("--len", cy_len, "digit count")->required();
  csym->add_flag("--json", cy_json, "emit the record as JSON");

  // min-digits
  std::int64_t md_n = 0, md_b = 0;
  bool md_json = false;
  CLI::App* mind = app.add_subcommand("min-digits", "smallest digit count of any (n, b)-palintiple");
  mind->add_option("n", md_n, "multiplier")->required();
  mind->add_option("b", md_b, "base")->required();
  mind->add_flag("--json", md_json, "emit JSON");

  // exists
  std::int64_t ex_n = 0, ex_b = 0;
  bool ex_json = false;
  CLI::App* exists = app.add_subcommand("exists", "whether any (n, b)-palintiple exists");
  exists->add_option("n", ex_n, "multiplier")->required();
  exists->add_option("b", ex_b, "base")->required();
  exists->add_flag("--json", ex_json, "emit JSON");

  // enumerate
  std::int64_t en_n = 0, en_b = 0, en_len = 0;
  bool en_json = false;
  CLI::App* enumerate = app.add_subcommand("enumerate", "all (n, b)-palintiples of one digit count");
  enumerate->add_option("n", en_n, "multiplier")->required();
  enumerate->add_option("b", en_b, "base")->required();
  enumerate->add_option("--len", en_len, "digit count")->required();
  enumerate->add_flag("--json", en_json, "emit records as a JSON array");

  // graph
  std::int64_t g_n = 0, g_b = 0;
  bool g_dot = false, g_full = false, g_json = false;
  CLI::App* graph = app.add_subcommand("graph", "carry-pair graph (trimmed by default)");
  graph->add_option("n", g_n, "multiplier")->required();
  graph->add_option("b", g_b, "base")->required();
  graph->add_flag("--dot", g_dot, "emit Graphviz DOT");
  graph->add_flag("--full", g_full, "use the full graph instead of the trimmed one");
  graph->add_flag("--json", g_json, "emit nodes and edges as JSON");

  // iso
  std::int64_t i_n1 = 0, i_b1 = 0, i_n2 = 0, i_b2 = 0;
  bool i_json = false;
  CLI::App* iso = app.add_subcommand("iso", "whether two trimmed carry-pair graphs are isomorphic");
  iso->add_option("n1", i_n1, "first multiplier")->required();
  iso->add_option("b1", i_b1, "first base")->required();
  iso->add_option("n2", i_n2, "second multiplier")->required();
  iso->add_option("b2", i_b2, "second base")->required();
  iso->add_flag("--json", i_json, "emit JSON");

  // is-1089
  std::int64_t t_n = 0, t_b = 0;
  bool t_json = false;
  CLI::App* is1089 = app.add_subcommand(
      "is-1089", "whether the trimmed graph matches the four-node 9801-family graph");
  is1089->add_option("n", t_n, "multiplier")->required();
  is1089->add_option("b", t_b, "base")->required();
  is1089->add_flag("--json", t_json, "emit JSON");

  // figure1
  std::int64_t f_from = 3, f_to = 100;
  std::string f_out;
  bool f_json = false;
  CLI::App* figure1 = app.add_subcommand(
      "figure1", "minimal-palintiple dataset (d0 versus dk) as CSV");
  figure1->add_option("--from", f_from, "first base (default 3)");
  figure1->add_option("--to", f_to, "last base (default 100)");
  figure1->add_option("--out", f_out, "write to this file instead of stdout");
  figure1->add_flag("--json", f_json, "emit rows as JSON instead of CSV");

  // scan
  std::int64_t s_from = 3, s_to = 20, s_depth = 8;
  std::string s_mode = "congruence", s_checkpoint, s_out;
  int s_jobs = 1;
  bool s_json = false, s_no_early_exit = false;
  CLI::App* scan = app.add_subcommand("scan", "classify every base in a range");
  scan->add_option("--from", s_from, "first base (default 3)");
  scan->add_option("--to", s_to, "last base (default 20)");
  scan->add_option("--mode", s_mode, "congruence | enumerate-to-depth (default congruence)");
  scan->add_option("--depth", s_depth, "digit bound for enumerate-to-depth (default 8)");
  scan->add_option("--jobs", s_jobs, "worker threads (default 1)");
  scan->add_option("--checkpoint", s_checkpoint, "JSON-lines checkpoint to append to and resume from");
  scan->add_option("--out", s_out, "write the CSV/JSON to this file instead of stdout");
  scan->add_flag("--no-early-exit", s_no_early_exit,
                 "keep scanning a base after its first asymmetric witness");
  scan->add_flag("--json", s_json, "emit the scan summary as JSON instead of CSV");

  // conjecture
  std::string conj_id;
  std::int64_t cj_bases = 30, cj_depth = 7;
  bool cj_json = false;
  CLI::App* conjecture = app.add_subcommand("conjecture", "run one empirical check suite");
  conjecture
      ->add_option("id", conj_id,
                   "one of: conjecture1, corollary2, pal-type, shifted-carries, reg1, equivalences")
      ->required()
      ->check(CLI::IsMember(
          {"conjecture1", "corollary2", "pal-type", "shifted-carries", "reg1", "equivalences"}));
  conjecture->add_option("--bases", cj_bases, "largest base to check (default 30)");
  conjecture->add_option("--depth", cj_depth, "largest digit count to check (default 7)");
  conjecture->add_flag("--json", cj_json, "emit the report as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (verify->parsed() || classify->parsed()) {
      const bool is_classify = classify->parsed();
      const std::int64_t n = is_classify ? c_n : v_n;
      const std::int64_t b = is_classify ? c_b : v_b;
      const Result<DigitString> digits = parse_digit_arg(
          is_classify ? c_digits : v_digits, b, is_classify ? c_value : v_value);
      if (!digits.ok()) return fail_usage(err, digits.error().message);
      const Result<PalintipleRecord> rec = verify_palintiple(digits.value(), n);
      if (!rec.ok()) return fail(err, rec.error());
      if (is_classify ? c_json : v_json) {
        emit(out, record_json(rec.value()));
      } else if (is_classify) {
        out << "carries:";
        for (std::int64_t c : rec.value().carries.carries) out << ' ' << c;
        out << "\n";
        out << "class: " << class_name(rec.value().cls) << "\n";
      } else {
        out << class_name(rec.value().cls) << "\n";
      }
      return 0;
    }

    if (pair_cls->parsed()) {
      const Result<PairClass> pc = pair_class(pc_n, pc_b);
      if (!pc.ok()) return fail(err, pc.error());
      if (pc_json) {
        emit(out, ordered_json{{"n", pc_n},
                               {"b", pc_b},
                               {"pair_class", pair_class_name(pc.value())},
                               {"congruence_solutions", congruence_solutions(pc_n, pc_b)}});
      } else {
        out << pair_class_name(pc.value()) << "\n";
      }
      return 0;
    }

    if (construct->parsed() && cshift->parsed()) {
      if (cs_b <= 2 || cs_n <= 1 || cs_n >= cs_b) {
        return fail_usage(err, "need base > 2 and 1 < n < base");
      }
      if (cs_count < 2) return fail_usage(err, "--count must be at least 2");
      const std::vector<std::int64_t> solutions = congruence_solutions(cs_n, cs_b);
      if (solutions.empty()) {
        err << "error (not-divisible): (n, b) admits no congruence solutions; "
               "the pair is not in the shifted-symmetric class\n";
        return 2;
      }
      std::int64_t solution = solutions.front();
      if (cshift->count("--solution") > 0) {
        bool known = false;
        for (std::int64_t s : solutions) known = known || s == cs_solution;
        if (!known) return fail_usage(err, "--solution is not a congruence solution of (n, b)");
        solution = cs_solution;
      }
      const PalintipleRecord rec = build_shifted_symmetric(cs_n, cs_b, solution, cs_count);
      if (cs_json) {
        emit(out, record_json(rec));
      } else {
        out << format_digits(rec.digits) << "\n";
      }
      return 0;
    }

    if (construct->parsed() && csym->parsed()) {
      if (cy_b <= 2 || cy_n <= 1 || cy_n >= cy_b) {
        return fail_usage(err, "need base > 2 and 1 < n < base");
      }
      if (cy_len < 2) return fail_usage(err, "--len must be at least 2");
      if (cy_b % (cy_n + 1) != 0) {
        err << "error (not-divisible): the symmetric construction needs (n+1) | b\n";
        return 2;
      }
      const std::vector<RSequence> sequences = enumerate_r_sequences(cy_len - 1);
      if (sequences.empty()) {
        err << "error (invalid-r-sequence): no palindromic bit sequence yields a " << cy_len
            << "-digit symmetric palintiple (the construction needs at least 4 digits)\n";
        return 2;
      }
      const Result<PalintipleRecord> rec = generate_symmetric(cy_n, cy_b, sequences.front());
      if (!rec.ok()) return fail(err, rec.error());
      if (cy_json) {
        emit(out, record_json(rec.value()));
      } else {
        out << format_digits(rec.value().digits) << "\n";
      }
      return 0;
    }

    if (mind->parsed()) {
      if (md_b <= 2 || md_n <= 1 || md_n >= md_b) {
        return fail_usage(err, "need base > 2 and 1 < n < base");
      }
      const std::optional<std::int64_t> md = min_digits(md_n, md_b);
      if (md_json) {
        emit(out, ordered_json{{"n", md_n},
                               {"b", md_b},
                               {"min_digits", md ? ordered_json(*md) : ordered_json(nullptr)}});
      } else if (md) {
        out << *md << "\n";
      } else {
        out << "none\n";
      }
      return 0;
    }

    if (exists->parsed()) {
      if (ex_b <= 2 || ex_n <= 1 || ex_n >= ex_b) {
        return fail_usage(err, "need base > 2 and 1 < n < base");
      }
      const bool yes = palintiples_exist(ex_n, ex_b);
      if (ex_json) {
        emit(out, ordered_json{{"n", ex_n}, {"b", ex_b}, {"exists", yes}});
      } else {
        out << (yes ? "true" : "false") << "\n";
      }
      return 0;
    }

    if (enumerate->parsed()) {
      if (en_b <= 2 || en_n <= 1 || en_n >= en_b) {
        return fail_usage(err, "need base > 2 and 1 < n < base");
      }
      if (en_len < 2) return fail_usage(err, "--len must be at least 2");
      const std::vector<PalintipleRecord> records = enumerate_palintiples(en_n, en_b, en_len);
      if (en_json) {
        ordered_json arr = ordered_json::array();
        for (const PalintipleRecord& rec : records) arr.push_back(record_json(rec));
        emit(out, arr);
      } else {
        for (const PalintipleRecord& rec : records) out << format_digits(rec.digits) << "\n";
      }
      return 0;
    }

    if (graph->parsed()) {
      if (g_b <= 2 || g_n <= 1 || g_n >= g_b) {
        return fail_usage(err, "need base > 2 and 1 < n < base");
      }
      const CarryPairGraph g = g_full ? build_graph(g_n, g_b) : trim_graph(g_n, g_b);
      if (g_dot) {
        out << to_dot(g);
      } else if (g_json) {
        emit(out, graph_json(g, g_full));
      } else {
        out << "nodes: " << g.nodes().size() << "\n";
        out << "edges: " << g.edge_count() << "\n";
      }
      return 0;
    }

    if (iso->parsed()) {
      if (i_b1 <= 2 || i_n1 <= 1 || i_n1 >= i_b1 || i_b2 <= 2 || i_n2 <= 1 || i_n2 >= i_b2) {
        return fail_usage(err, "need base > 2 and 1 < n < base for both pairs");
      }
      const bool same = digraph_isomorphic(trim_graph(i_n1, i_b1), trim_graph(i_n2, i_b2));
      if (i_json) {
        emit(out, ordered_json{{"n1", i_n1},
                               {"b1", i_b1},
                               {"n2", i_n2},
                               {"b2", i_b2},
                               {"isomorphic", same}});
      } else {
        out << (same ? "isomorphic" : "not-isomorphic") << "\n";
      }
      return 0;
    }

    if (is1089->parsed()) {
      if (t_b <= 2 || t_n <= 1 || t_n >= t_b) {
        return fail_usage(err, "need base > 2 and 1 < n < base");
      }
      const bool yes = is_1089_type(t_n, t_b);
      if (t_json) {
        emit(out, ordered_json{{"n", t_n}, {"b", t_b}, {"is_1089_type", yes}});
      } else {
        out << (yes ? "true" : "false") << "\n";
      }
      return 0;
    }

    if (figure1->parsed()) {
      if (f_from < 3 || f_from > f_to) return fail_usage(err, "need 3 <= from <= to");
      const std::vector<MinimalRow> rows = figure1_dataset(f_from, f_to);
      std::string payload;
      if (f_json) {
        ordered_json arr = ordered_json::array();
        for (const MinimalRow& row : rows) {
          ordered_json one;
          to_json(one, row);
          arr.push_back(std::move(one));
        }
        payload = arr.dump(2) + "\n";
      } else {
        payload = figure1_csv(rows);
      }
      return write_payload(f_out, payload, out, err);
    }

    if (scan->parsed()) {
      const std::optional<ScanMode> mode = scan_mode_from_name(s_mode);
      if (!mode) return fail_usage(err, "--mode must be congruence or enumerate-to-depth");
      ScanOptions opts;
      opts.from = s_from;
      opts.to = s_to;
      opts.mode = *mode;
      opts.depth = s_depth;
      opts.jobs = s_jobs;
      opts.early_exit = !s_no_early_exit;
      opts.checkpoint_path = s_checkpoint;
      const Result<ScanSummary> summary = scan_bases(opts);
      if (!summary.ok()) return fail(err, summary.error());
      std::string payload;
      if (s_json) {
        ordered_json j;
        to_json(j, summary.value());
        payload = j.dump(2) + "\n";
      } else {
        payload = scan_csv(summary.value());
      }
      const int rc = write_payload(s_out, payload, out, err);
      if (rc != 0) return rc;
      if (!summary.value().prime_law_violations.empty()) {
        err << "fatal: strongly symmetric base with composite b+1:";
        for (std::int64_t b : summary.value().prime_law_violations) err << ' ' << b;
        err << "\n";
        return 2;
      }
      return 0;
    }

    if (conjecture->parsed()) {
      if (cj_bases < 3) return fail_usage(err, "--bases must be at least 3");
      if (cj_depth < 2) return fail_usage(err, "--depth must be at least 2");
      ConjectureReport report;
      if (conj_id == "conjecture1") {
        report = check_conjecture1(cj_bases, cj_depth);
      } else if (conj_id == "corollary2") {
        report = check_corollary2(cj_bases, cj_depth);
      } else if (conj_id == "pal-type") {
        report = check_pal_type(cj_bases, cj_depth);
      } else if (conj_id == "shifted-carries") {
        report = check_shifted_constant_carries(cj_bases, cj_depth);
      } else if (conj_id == "reg1") {
        report.conjecture = "reg1";
        report.b_max = cj_bases;
        report.d_max = cj_depth;
        for (std::int64_t b = 3; b <= cj_bases; ++b) {
          for (std::int64_t n = 2; n < b; ++n) {
            if (b % (n + 1) != 0) continue;
            const ConjectureReport one = check_reg1_generator(n, b, cj_depth);
            report.checked += one.checked;
            report.counterexamples.insert(report.counterexamples.end(),
                                          one.counterexamples.begin(), one.counterexamples.end());
          }
        }
      } else {  // equivalences
        report.conjecture = "equivalences";
        report.b_max = cj_bases;
        report.d_max = cj_depth;
        for (std::int64_t b = 3; b <= cj_bases; ++b) {
          for (std::int64_t n = 2; n < b; ++n) {
            const EquivalenceReport one = check_equivalences(n, b, cj_depth);
            ++report.checked;
            if (!one.consistent) {
              report.counterexamples.push_back(Counterexample{
                  n, b, "", {}, -1,
                  std::string("conditions disagree: all_symmetric=") + flag_text(one.all_symmetric) +
                      " graph_1089=" + (one.graph_1089 ? "true" : "false") +
                      " carries_structured=" + flag_text(one.carries_structured) +
                      " divides=" + (one.divides ? "true" : "false")});
            }
          }
        }
      }
      if (cj_json) {
        ordered_json j;
        to_json(j, report);
        emit(out, j);
      } else {
        print_report(out, report);
      }
      return report.counterexample_found() ? 2 : 0;
    }
  } catch (const std::invalid_argument& e) {
    return fail_usage(err, e.what());
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }

  err << "error (bad-parameters): no subcommand\n";
  return 1;
}

}  // namespace pal
