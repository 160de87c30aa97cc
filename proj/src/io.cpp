#include "symlift/io.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <set>
#include <sstream>

namespace symlift::io {

namespace {

Json parse_document(const std::string& text, const char* what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string(what) + ": " + e.what());
  }
}

void expect_keys(const Json& obj, const std::string& where, std::initializer_list<const char*> required,
                 std::initializer_list<const char*> optional = {}) {
  if (!obj.is_object()) throw InputError(where + " must be an object");
  for (const char* k : required) {
    if (!obj.contains(k)) throw InputError(where + " is missing \"" + k + "\"");
  }
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    const auto eq = [&](const char* k) { return key == k; };
    if (std::none_of(required.begin(), required.end(), eq) && std::none_of(optional.begin(), optional.end(), eq)) {
      throw InputError(where + " has unknown key \"" + key + "\"");
    }
  }
}

std::size_t as_count(const Json& v, const std::string& where) {
  if (!v.is_number_integer() || v.get<long long>() < 0) throw InputError(where + " must be a non-negative integer");
  return v.get<std::size_t>();
}

double as_number(const Json& v, const std::string& where) {
  if (!v.is_number()) throw InputError(where + " must be a number");
  return v.get<double>();
}

std::vector<std::size_t> as_index(const Json& v, const std::vector<std::size_t>& shape, const std::string& where) {
  if (!v.is_array() || v.size() != shape.size()) {
    throw InputError(where + " index must list " + std::to_string(shape.size()) + " integers");
  }
  std::vector<std::size_t> idx;
  for (std::size_t a = 0; a < shape.size(); ++a) {
    idx.push_back(as_count(v[a], where + " index"));
    if (idx.back() >= shape[a]) throw InputError(where + " index is outside the grid");
  }
  return idx;
}

Point parse_point(const Json& v, const PointDomain& domain, const std::string& where) {
  if (domain.kind() == DomainKind::labels) {
    if (!v.is_string()) throw InputError(where + ": label points must be strings");
    const auto rank = domain.rank_of(v.get<std::string>());
    if (!rank) throw InputError(where + ": unknown label \"" + v.get<std::string>() + "\"");
    return Point::label(*rank);
  }
  if (!v.is_array() || v.size() != domain.dim()) {
    throw InputError(where + ": points must be arrays of " + std::to_string(domain.dim()) + " numbers");
  }
  std::vector<double> c;
  for (const auto& x : v) c.push_back(as_number(x, where + " coordinate"));
  return Point(std::move(c));
}

// Visits every {index, points} entry of a grid array, enforcing that each
// node appears exactly once.
template <class F>
void for_each_entry(const Json& arr, const SampledRegion& shape_of, const std::string& what, F&& f) {
  if (!arr.is_array()) throw InputError(what + " must be an array");
  const std::size_t count = shape_of.node_count();
  if (arr.size() != count) {
    throw InputError(what + " has " + std::to_string(arr.size()) + " entries, the grid has " + std::to_string(count));
  }
  std::vector<bool> seen(count, false);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string where = what + "[" + std::to_string(i) + "]";
    expect_keys(arr[i], where, {"index", "points"});
    const std::size_t node = shape_of.node_of(as_index(arr[i]["index"], shape_of.shape, where));
    if (seen[node]) throw InputError(where + " repeats a grid index");
    seen[node] = true;
    if (!arr[i]["points"].is_array()) throw InputError(where + " points must be an array");
    f(node, arr[i]["points"], where);
  }
}

}  // namespace

std::string read_text(const std::string& path, std::istream& stdin_stream) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(stdin_stream), std::istreambuf_iterator<char>());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SampledRegion parse_region(const std::string& text) {
  const Json doc = parse_document(text, "region");
  expect_keys(doc, "region", {"version", "mode", "m", "n", "shape", "eps", "domain", "samples"}, {"axes"});
  if (!doc["version"].is_number_integer() || doc["version"].get<long long>() != kFormatVersion) {
    throw InputError("region: unsupported version");
  }
  SampledRegion r;
  const Json& mode = doc["mode"];
  if (mode == "sp") {
    r.mode = RegionMode::sp;
  } else if (mode == "f") {
    r.mode = RegionMode::f;
  } else {
    throw InputError("region: mode must be \"sp\" or \"f\"");
  }
  r.m = as_count(doc["m"], "region m");
  if (r.m == 0) throw InputError("region: m must be positive");
  const std::size_t n = as_count(doc["n"], "region n");
  if (!doc["shape"].is_array() || doc["shape"].size() != n || n == 0) {
    throw InputError("region: shape must list n >= 1 extents");
  }
  for (const auto& s : doc["shape"]) {
    r.shape.push_back(as_count(s, "region shape"));
    if (r.shape.back() == 0) throw InputError("region: shape extents must be positive");
  }
  r.eps = as_number(doc["eps"], "region eps");

  const Json& dom = doc["domain"];
  if (!dom.is_object() || !dom.contains("kind")) throw InputError("region: domain must have a kind");
  if (dom["kind"] == "euclidean") {
    expect_keys(dom, "region domain", {"kind", "dim"});
    const std::size_t dim = as_count(dom["dim"], "region domain dim");
    if (dim == 0) throw InputError("region: domain dim must be positive");
    r.domain = PointDomain::euclidean(dim);
  } else if (dom["kind"] == "labels") {
    expect_keys(dom, "region domain", {"kind"});
    std::set<std::string> names;
    if (doc["samples"].is_array()) {
      for (const auto& s : doc["samples"]) {
        if (!s.is_object() || !s.contains("points") || !s["points"].is_array()) continue;
        for (const auto& p : s["points"]) {
          if (p.is_string()) names.insert(p.get<std::string>());
        }
      }
    }
    r.domain = PointDomain::labels(std::vector<std::string>(names.begin(), names.end()));
  } else {
    throw InputError("region: domain kind must be \"euclidean\" or \"labels\"");
  }

  if (doc.contains("axes")) {
    const Json& axes = doc["axes"];
    if (!axes.is_array() || axes.size() != n) throw InputError("region: axes must hold one array per axis");
    for (const auto& a : axes) {
      if (!a.is_array()) throw InputError("region: axes entries must be arrays");
      std::vector<double> coords;
      for (const auto& x : a) coords.push_back(as_number(x, "region axes"));
      r.axes.push_back(std::move(coords));
    }
  }

  r.samples.assign(r.node_count(), {});
  for_each_entry(doc["samples"], r, "samples", [&](std::size_t node, const Json& pts, const std::string& where) {
    MTuple t;
    for (const auto& p : pts) t.push_back(parse_point(p, r.domain, where));
    if (r.mode == RegionMode::sp) {
      if (t.size() != r.m) throw InputError(where + " must have exactly m points");
      std::sort(t.begin(), t.end());
    } else {
      if (t.empty() || t.size() > r.m) throw InputError(where + " must have 1..m points");
      std::sort(t.begin(), t.end());
      if (std::adjacent_find(t.begin(), t.end()) != t.end()) throw InputError(where + " repeats a support point");
    }
    r.samples[node] = std::move(t);
  });
  r.validate();
  return r;
}

Json point_to_json(const PointDomain& domain, const Point& p) {
  if (domain.kind() == DomainKind::labels) {
    return domain.label_names().at(static_cast<std::size_t>(p[0]));
  }
  Json a = Json::array();
  for (double x : p.coords()) a.push_back(x);
  return a;
}

Json index_to_json(const SampledRegion& region, std::size_t node) {
  Json a = Json::array();
  for (std::size_t i : region.index_of(node)) a.push_back(i);
  return a;
}

Json pattern_to_json(const PieceId& piece) {
  Json a = Json::array();
  for (const auto& b : piece.blocks()) a.push_back(b);
  return a;
}

namespace {

Json domain_to_json(const PointDomain& d) {
  Json j;
  if (d.kind() == DomainKind::labels) {
    j["kind"] = "labels";
  } else {
    j["kind"] = "euclidean";
    j["dim"] = d.dim();
  }
  return j;
}

Json header(const SampledRegion& r) {
  Json j;
  j["version"] = kFormatVersion;
  j["mode"] = r.mode == RegionMode::sp ? "sp" : "f";
  j["m"] = r.m;
  j["n"] = r.n();
  j["shape"] = r.shape;
  j["eps"] = r.eps;
  return j;
}

}  // namespace

Json tuples_to_json(const SampledRegion& region, const std::vector<MTuple>& tuples) {
  Json a = Json::array();
  for (std::size_t node = 0; node < tuples.size(); ++node) {
    Json e;
    e["index"] = index_to_json(region, node);
    Json pts = Json::array();
    for (const Point& p : tuples[node]) pts.push_back(point_to_json(region.domain, p));
    e["points"] = std::move(pts);
    a.push_back(std::move(e));
  }
  return a;
}

Json region_to_json(const SampledRegion& region) {
  Json j = header(region);
  j["domain"] = domain_to_json(region.domain);
  if (!region.axes.empty()) j["axes"] = region.axes;
  j["samples"] = tuples_to_json(region, region.samples);
  return j;
}

std::vector<MTuple> parse_lift(const std::string& text, const SampledRegion& region) {
  const Json doc = parse_document(text, "lift");
  expect_keys(doc, "lift", {"version", "lift"},
              {"kind", "mode", "m", "n", "shape", "eps", "status", "error", "segments", "events", "passing_nodes",
               "diagnostics", "checks"});
  if (!doc["version"].is_number_integer() || doc["version"].get<long long>() != kFormatVersion) {
    throw InputError("lift: unsupported version");
  }
  const Json h = header(region);
  for (const char* k : {"mode", "m", "n", "shape"}) {
    if (doc.contains(k) && doc[k] != h[k]) {
      throw InputMismatch(std::string("lift \"") + k + "\" does not match the region");
    }
  }
  if (doc["lift"].is_array() && doc["lift"].size() != region.node_count()) {
    throw InputMismatch("lift has " + std::to_string(doc["lift"].size()) + " entries, the region has " +
                        std::to_string(region.node_count()) + " nodes");
  }
  std::vector<MTuple> tuples(region.node_count());
  for_each_entry(doc["lift"], region, "lift", [&](std::size_t node, const Json& pts, const std::string& where) {
    if (pts.size() != region.m) throw InputMismatch(where + " must have exactly m points");
    for (const auto& p : pts) tuples[node].push_back(parse_point(p, region.domain, where));
  });
  return tuples;
}

Json segmentation_to_json(const SampledRegion& region, const Segmentation& seg,
                          const std::vector<SegmentLift>* lifts) {
  Json out;
  Json segs = Json::array();
  for (const auto& s : seg.segments) {
    Json j;
    j["id"] = s.id;
    j["pattern"] = pattern_to_json(s.piece);
    j["size"] = s.nodes.size();
    j["first"] = index_to_json(region, s.nodes.front());
    j["events"] = s.events;
    if (lifts) {
      const SegmentLift& l = (*lifts)[s.id];
      j["seed"] = index_to_json(region, l.seed_node);
      j["glued_via"] = l.glued_via ? Json(*l.glued_via) : Json(nullptr);
    }
    segs.push_back(std::move(j));
  }
  Json events = Json::array();
  std::set<std::size_t> passing;
  for (const auto& e : seg.events) {
    Json j;
    j["id"] = e.id;
    j["from"] = index_to_json(region, e.from);
    j["to"] = index_to_json(region, e.to);
    j["axis"] = e.axis;
    j["from_pattern"] = pattern_to_json(e.from_piece);
    j["to_pattern"] = pattern_to_json(e.to_piece);
    Json p = Json::array();
    for (std::size_t node : e.passing) {
      p.push_back(index_to_json(region, node));
      passing.insert(node);
    }
    j["passing"] = std::move(p);
    events.push_back(std::move(j));
  }
  Json pn = Json::array();
  for (std::size_t node : passing) pn.push_back(index_to_json(region, node));
  out["segments"] = std::move(segs);
  out["events"] = std::move(events);
  out["passing_nodes"] = std::move(pn);
  return out;
}

Json diagnostics_to_json(const SampledRegion& region, const LiftResult& result) {
  const auto& d = result.diagnostics;
  Json j;
  j["max_step_displacement"] = d.max_step_displacement;
  j["max_position_step"] = d.max_position_step;
  j["round_trip_residual"] = d.round_trip_residual;
  Json ties = Json::array();
  for (const auto& t : d.ties) {
    Json e;
    e["node"] = index_to_json(region, t.node);
    e["from"] = index_to_json(region, t.from);
    e["rule"] = t.rule;
    ties.push_back(std::move(e));
  }
  j["ties"] = std::move(ties);
  if (region.mode == RegionMode::f) {
    Json mult = Json::array();
    for (std::size_t node = 0; node < result.multiplicities.size(); ++node) {
      Json e;
      e["index"] = index_to_json(region, node);
      e["multiplicity"] = result.multiplicities[node];
      mult.push_back(std::move(e));
    }
    j["multiplicities"] = std::move(mult);
  }
  return j;
}

Json check_to_json(const std::string& name, const std::string& verdict, const std::string& detail) {
  Json j;
  j["name"] = name;
  j["verdict"] = verdict;
  j["detail"] = detail;
  return j;
}

namespace {

Json space_to_json(const FiniteTopology& t) {
  Json j;
  j["points"] = t.n();
  Json opens = Json::array();
  for (Mask o : t.opens()) opens.push_back(format_set(o, t.n()));
  j["opens"] = std::move(opens);
  return j;
}

}  // namespace

Json certificate_to_json(const Certificate& c) {
  Json j;
  j["space"] = space_to_json(c.space);
  Json subsets = Json::array();
  for (Mask s : c.subsets) subsets.push_back(format_set(s, c.space.n()));
  j["subsets"] = std::move(subsets);
  if (c.source) {
    j["source"] = space_to_json(*c.source);
    Json map = Json::array();
    for (std::size_t z : c.map) map.push_back(point_name(z));
    j["map"] = std::move(map);
  }
  j["lhs"] = c.lhs;
  j["rhs"] = c.rhs;
  return j;
}

Json audit_to_json(const AuditReport& r) {
  Json j;
  j["lemma"] = r.lemma;
  j["statement"] = r.statement;
  j["n_max"] = r.n_max;
  j["universe"] = r.universe;
  j["cases"] = r.cases;
  j["verdict"] = r.holds ? "holds" : "fails";
  j["expected"] = r.expected_holds ? "holds" : "fails";
  j["certificate"] = r.certificate ? certificate_to_json(*r.certificate) : Json(nullptr);
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace symlift::io
