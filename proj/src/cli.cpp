#include "symlift/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "symlift/finitetop.hpp"
#include "symlift/io.hpp"
#include "symlift/lifting.hpp"
#include "symlift/partitions.hpp"

namespace symlift::cli {

namespace {

using io::Json;

struct Streams {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write " + path);
  f << text;
  if (!f) throw InputError("failed writing " + path);
}

// ---------------------------------------------------------------------------
// partitions

int cmd_partitions(std::size_t m, bool json, Streams s) {
  if (m < 1 || m > kMaxPartitionM) throw InputError("m must be between 1 and " + std::to_string(kMaxPartitionM));
  const auto parts = enumerate_partitions(m);
  const auto table = sim_classes(m);
  const auto sizes = table.class_sizes();
  if (json) {
    Json j;
    j["version"] = io::kFormatVersion;
    j["m"] = m;
    Json list = Json::array();
    for (const auto& p : parts) {
      Json e;
      e["partition"] = p.notation();
      e["alpha"] = p.alpha;
      e["parts"] = p.part_count();
      e["class"] = table.class_of(p);
      list.push_back(std::move(e));
    }
    j["partitions"] = std::move(list);
    Json classes = Json::array();
    for (std::size_t c = 0; c < table.classes.size(); ++c) {
      Json e;
      e["parts"] = table.classes[c].front().part_count();
      Json members = Json::array();
      for (const auto& p : table.classes[c]) members.push_back(p.notation());
      e["members"] = std::move(members);
      e["size"] = sizes[c];
      classes.push_back(std::move(e));
    }
    j["classes"] = std::move(classes);
    j["M"] = table.M();
    s.out << io::dump(j);
    return kExitOk;
  }
  std::size_t width = std::string("partition").size();
  for (const auto& p : parts) width = std::max(width, p.notation().size());
  s.out << "m = " << m << "\n";
  s.out << std::left << std::setw(static_cast<int>(width + 2)) << "partition" << std::setw(7) << "parts"
        << "class\n";
  for (const auto& p : parts) {
    s.out << std::setw(static_cast<int>(width + 2)) << p.notation() << std::setw(7) << p.part_count()
          << table.class_of(p) << "\n";
  }
  s.out << "M = " << table.M() << "\n";
  s.out << "class sizes:";
  for (std::size_t z : sizes) s.out << ' ' << z;
  s.out << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// audit

int cmd_audit(const std::string& lemma, std::size_t n, const std::string& out_path, bool json, unsigned threads,
              Streams s) {
  if (n < 1 || n > kMaxEnumerateN) throw InputError("n must be between 1 and " + std::to_string(kMaxEnumerateN));
  std::vector<std::string> ids;
  if (lemma == "all") {
    for (const auto& info : lemma_registry()) ids.push_back(info.id);
  } else {
    ids.push_back(lemma_info(lemma).id);
  }
  Json reports = Json::array();
  Json checks = Json::array();
  bool all_match = true;
  std::ostringstream text;
  for (const auto& id : ids) {
    const std::size_t cap = lemma == "all" ? std::min(n, lemma_info(id).max_n) : n;
    const AuditReport r = audit(id, cap, threads);
    reports.push_back(io::audit_to_json(r));
    const bool match = r.matches_expectation();
    all_match = all_match && match;
    const std::string verdict = r.holds ? "holds" : "fails";
    const std::string expected = r.expected_holds ? "holds" : "fails";
    checks.push_back(io::check_to_json(id, match ? "pass" : "fail",
                                       verdict + " (expected " + expected + ") over " + std::to_string(r.cases) +
                                           " cases up to n=" + std::to_string(cap)));
    text << id << ": " << verdict << " up to n=" << cap << ", " << r.cases << " cases"
         << (match ? "" : "  UNEXPECTED") << "\n";
    if (r.certificate) {
      const auto& c = *r.certificate;
      text << "  counterexample on " << c.space.n() << " points, opens";
      for (Mask o : c.space.opens()) text << ' ' << format_set(o, c.space.n());
      text << "; subsets";
      for (Mask x : c.subsets) text << ' ' << format_set(x, c.space.n());
      text << "; " << c.lhs << " vs " << c.rhs << "\n";
    }
  }
  Json doc;
  doc["version"] = io::kFormatVersion;
  doc["kind"] = "audit";
  doc["n"] = n;
  doc["reports"] = std::move(reports);
  doc["checks"] = std::move(checks);
  if (!out_path.empty()) write_file(out_path, io::dump(doc));
  if (json) {
    s.out << io::dump(doc);
  } else {
    s.out << text.str();
  }
  return all_match ? kExitOk : kExitCheckFailed;
}

// ---------------------------------------------------------------------------
// lift / verify

SampledRegion load_region(const std::string& path, std::optional<double> eps, Streams s) {
  SampledRegion r = io::parse_region(io::read_text(path, s.in));
  if (eps) {
    r.eps = *eps;
    r.validate();
  }
  return r;
}

Json verify_checks(const VerifyReport& v) {
  Json checks = Json::array();
  for (const auto& c : v.checks) checks.push_back(io::check_to_json(c.name, c.pass ? "pass" : "fail", c.detail));
  return checks;
}

Json header_of(const SampledRegion& r) {
  Json j;
  j["version"] = io::kFormatVersion;
  j["kind"] = "lift";
  j["mode"] = r.mode == RegionMode::sp ? "sp" : "f";
  j["m"] = r.m;
  j["n"] = r.n();
  j["shape"] = r.shape;
  j["eps"] = r.eps;
  return j;
}

void add_structure_checks(Json& checks, const SampledRegion& r, const Segmentation& seg) {
  const auto interior = check_empty_interior(r, seg);
  std::string detail = std::to_string(interior.passing_nodes.size()) + " passing node(s)";
  if (interior.ball) detail += "; a full unit ball of passing nodes sits at node " + std::to_string((*interior.ball)[0]);
  checks.push_back(io::check_to_json("passing-interior", "info",
                                     (interior.holds ? "empty interior, " : "nonempty interior, ") + detail));
  const auto single = check_single_piece(r, seg);
  checks.push_back(io::check_to_json(
      "single-piece", "info",
      std::string(single.single ? "one pattern" : std::to_string(single.patterns.size()) + " patterns") +
          (single.consistent ? "" : ", inconsistent with the event list")));
}

int cmd_lift(const std::string& path, const std::string& out_path, std::optional<double> eps, Streams s) {
  const SampledRegion r = load_region(path, eps, s);
  Json doc = header_of(r);
  int code = kExitOk;
  std::string summary;
  try {
    const LiftResult result = lift_region(r);
    const VerifyReport v = verify(r, result.tuples);
    code = v.ok() ? kExitOk : kExitCheckFailed;
    doc["status"] = v.ok() ? "ok" : "unverified";
    doc["lift"] = io::tuples_to_json(r, result.tuples);
    const Json structure = io::segmentation_to_json(r, result.segmentation, &result.segments);
    for (const auto& [k, val] : structure.items()) doc[k] = val;
    doc["diagnostics"] = io::diagnostics_to_json(r, result);
    Json checks = verify_checks(v);
    add_structure_checks(checks, r, result.segmentation);
    doc["checks"] = std::move(checks);
    std::set<std::size_t> passing;
    for (const auto& e : result.segmentation.events) passing.insert(e.passing.begin(), e.passing.end());
    std::ostringstream os;
    os << "lifted " << r.node_count() << " nodes: " << result.segmentation.segments.size() << " segment(s), "
       << result.segmentation.events.size() << " event(s), " << passing.size() << " passing node(s), "
       << (v.ok() ? "verified" : "verification FAILED") << "\n";
    summary = os.str();
  } catch (const HolonomyError& e) {
    code = kExitObstruction;
    doc["status"] = "obstruction";
    Json err;
    err["type"] = "HolonomyError";
    err["message"] = e.what();
    Json nodes = Json::array();
    for (std::size_t node : e.nodes()) nodes.push_back(io::index_to_json(r, node));
    err["nodes"] = std::move(nodes);
    doc["error"] = std::move(err);
    summary = std::string("HolonomyError: ") + e.what() + "\n";
  } catch (const ConflictingSheet& e) {
    code = kExitObstruction;
    doc["status"] = "obstruction";
    Json err;
    err["type"] = "ConflictingSheet";
    err["message"] = e.what();
    err["event"] = e.event();
    doc["error"] = std::move(err);
    summary = std::string("ConflictingSheet: ") + e.what() + "\n";
  }
  if (code == kExitObstruction) {
    const Segmentation seg = segment(r);
    const Json structure = io::segmentation_to_json(r, seg);
    for (const auto& [k, val] : structure.items()) doc[k] = val;
    Json checks = Json::array();
    checks.push_back(io::check_to_json("lift", "fail", doc["error"]["message"].get<std::string>()));
    add_structure_checks(checks, r, seg);
    doc["checks"] = std::move(checks);
  }
  if (out_path.empty()) {
    s.out << io::dump(doc);
  } else {
    write_file(out_path, io::dump(doc));
    s.out << summary;
  }
  if (code == kExitObstruction) s.err << summary;
  return code;
}

int cmd_verify(const std::string& region_path, const std::string& lift_path, std::optional<double> eps, bool json,
               Streams s) {
  if (region_path == "-" && lift_path == "-") throw InputError("only one input can come from stdin");
  const SampledRegion r = load_region(region_path, eps, s);
  const auto tuples = io::parse_lift(io::read_text(lift_path, s.in), r);
  const VerifyReport v = verify(r, tuples);
  if (json) {
    Json doc;
    doc["version"] = io::kFormatVersion;
    doc["kind"] = "verify";
    doc["ok"] = v.ok();
    doc["checks"] = verify_checks(v);
    s.out << io::dump(doc);
  } else {
    for (const auto& c : v.checks) s.out << (c.pass ? "pass " : "FAIL ") << c.name << ": " << c.detail << "\n";
  }
  return v.ok() ? kExitOk : kExitCheckFailed;
}

// ---------------------------------------------------------------------------
// count

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

int cmd_count(std::size_t q, std::size_t m, bool json, Streams s) {
  if (q < 1 || m < 1) throw InputError("q and m must be positive");
  if (m > kMaxPieceM) throw InputError("m must be at most " + std::to_string(kMaxPieceM));
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < m; ++i) {
    if (total > kMaxProductSize / q) throw InputError("q^m exceeds " + std::to_string(kMaxProductSize));
    total *= q;
  }
  // brute force over X^m
  std::set<std::vector<std::size_t>> sp, f;
  std::map<PieceId, std::uint64_t> piece_points;
  std::vector<std::size_t> t(m, 0);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    for (std::size_t i = m; i-- > 0;) {
      t[i] = c % q;
      c /= q;
    }
    sp.insert(sorted_copy(t));
    f.insert(support_of(t));
    ++piece_points[exact_pattern(t)];
  }
  auto pieces = enumerate_pieces(m);
  std::stable_sort(pieces.begin(), pieces.end(),
                   [](const PieceId& a, const PieceId& b) { return a.block_count() > b.block_count(); });
  bool ok = true;
  std::vector<std::uint64_t> counts;
  for (const auto& p : pieces) {
    const auto it = piece_points.find(p);
    const std::uint64_t brute = it == piece_points.end() ? 0 : it->second;
    ok = ok && brute == count_piece_points(q, p);
    counts.push_back(brute);
  }
  const std::uint64_t sp_formula = binomial(q + m - 1, m);
  std::uint64_t f_formula = 0;
  for (std::size_t k = 1; k <= m; ++k) f_formula += binomial(q, k);
  const bool sp_ok = sp.size() == sp_formula, f_ok = f.size() == f_formula;
  ok = ok && sp_ok && f_ok;
  if (json) {
    Json j;
    j["version"] = io::kFormatVersion;
    j["q"] = q;
    j["m"] = m;
    j["product"] = total;
    Json pl = Json::array();
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      Json e;
      e["pattern"] = io::pattern_to_json(pieces[i]);
      e["points"] = counts[i];
      pl.push_back(std::move(e));
    }
    j["pieces"] = std::move(pl);
    j["sp"] = sp.size();
    j["f"] = f.size();
    Json checks = Json::array();
    checks.push_back(io::check_to_json("pieces", ok ? "pass" : "fail", "brute force against falling factorials"));
    checks.push_back(io::check_to_json("sp", sp_ok ? "pass" : "fail", "C(q+m-1,m) = " + std::to_string(sp_formula)));
    checks.push_back(io::check_to_json("f", f_ok ? "pass" : "fail", "sum C(q,k) = " + std::to_string(f_formula)));
    j["checks"] = std::move(checks);
    s.out << io::dump(j);
  } else {
    s.out << "|X^m| = " << total << "\n";
    s.out << "pieces:";
    for (std::uint64_t c : counts) s.out << ' ' << c;
    s.out << "\n";
    s.out << "|SP_m| = " << sp.size() << (sp_ok ? "" : "  MISMATCH") << "\n";
    s.out << "|F_m| = " << f.size() << (f_ok ? "" : "  MISMATCH") << "\n";
  }
  return ok ? kExitOk : kExitCheckFailed;
}

std::string version_string() { return "symlift 1.0"; }

}  // namespace

unsigned thread_budget() {
  const char* env = std::getenv("SYMLIFT_THREADS");
  if (!env || !*env) return std::max(1U, std::thread::hardware_concurrency());
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1 || v > 4096) throw InputError("SYMLIFT_THREADS must be a positive integer");
  return static_cast<unsigned>(v);
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Symmetric products, finite topologies and multiset path lifting", "symlift"};
  app.require_subcommand(1);
  app.set_version_flag("--version", version_string());

  std::size_t part_m = 0;
  bool part_json = false;
  auto* partitions = app.add_subcommand("partitions", "List partitions of m and their part-count classes");
  partitions->add_option("m", part_m, "Integer to partition")->required();
  partitions->add_flag("--json", part_json, "Emit JSON");

  std::string lemma;
  std::size_t audit_n = 0;
  std::string audit_out;
  bool audit_json = false;
  auto* audit_cmd = app.add_subcommand("audit", "Exhaustively audit a registered lemma (or all) on small spaces");
  audit_cmd->add_option("lemma", lemma, "Lemma id or 'all'")->required();
  audit_cmd->add_option("n", audit_n, "Largest space size")->required();
  audit_cmd->add_option("--out", audit_out, "Write the JSON report here");
  audit_cmd->add_flag("--json", audit_json, "Print the JSON report");

  std::string lift_region_path, lift_out, seed_policy = "canonical", tie = "lex";
  std::optional<double> lift_eps;
  auto* lift_cmd = app.add_subcommand("lift", "Lift a sampled region to ordered tuples");
  lift_cmd->add_option("region", lift_region_path, "Region JSON file, or - for stdin")->required();
  lift_cmd->add_option("--out", lift_out, "Write the lift report here");
  lift_cmd->add_option("--seed-policy", seed_policy, "Seed for the first segment")
      ->check(CLI::IsMember({"canonical"}));
  lift_cmd->add_option("--tie", tie, "Tie-break rule")->check(CLI::IsMember({"lex"}));
  lift_cmd->add_option("--eps", lift_eps, "Override the region's classification tolerance");

  std::string verify_region_path, verify_lift_path;
  std::optional<double> verify_eps;
  bool verify_json = false;
  auto* verify_cmd = app.add_subcommand("verify", "Check a lift against its region");
  verify_cmd->add_option("region", verify_region_path, "Region JSON file")->required();
  verify_cmd->add_option("lift", verify_lift_path, "Lift report JSON file")->required();
  verify_cmd->add_option("--eps", verify_eps, "Override the region's classification tolerance");
  verify_cmd->add_flag("--json", verify_json, "Emit JSON");

  std::size_t count_q = 0, count_m = 0;
  bool count_json = false;
  auto* count_cmd = app.add_subcommand("count", "Count X^m, its pieces and both quotients for |X| = q");
  count_cmd->add_option("q", count_q, "Size of X")->required();
  count_cmd->add_option("m", count_m, "Tuple length")->required();
  count_cmd->add_flag("--json", count_json, "Emit JSON");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << version_string() << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }

  const Streams s{in, out, err};
  try {
    if (partitions->parsed()) return cmd_partitions(part_m, part_json, s);
    if (audit_cmd->parsed()) return cmd_audit(lemma, audit_n, audit_out, audit_json, thread_budget(), s);
    if (lift_cmd->parsed()) return cmd_lift(lift_region_path, lift_out, lift_eps, s);
    if (verify_cmd->parsed()) return cmd_verify(verify_region_path, verify_lift_path, verify_eps, verify_json, s);
    if (count_cmd->parsed()) return cmd_count(count_q, count_m, count_json, s);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ClassificationAmbiguity& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  err << "error: no subcommand\n";
  return kExitInput;
}

}  // namespace symlift::cli
