#pragma once

// Strict JSON formats for regions, lifts and audit reports.

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "symlift/finitetop.hpp"
#include "symlift/lifting.hpp"
#include "symlift/regions.hpp"

namespace symlift::io {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

/// Reads a whole file, or standard input when path is "-". Throws InputError.
std::string read_text(const std::string& path, std::istream& stdin_stream);

/// Parses a region document. Unknown keys, wrong types, duplicate or missing
/// grid indices and malformed samples raise InputError. sp samples are sorted;
/// f samples must list distinct points. Label points are ranked by name.
SampledRegion parse_region(const std::string& text);
Json region_to_json(const SampledRegion& region);

/// Parses the "lift" grid of a lift report against `region`. Other report keys
/// are accepted (and checked for agreement when they describe the grid).
/// Throws InputError / InputMismatch.
std::vector<MTuple> parse_lift(const std::string& text, const SampledRegion& region);

Json point_to_json(const PointDomain& domain, const Point& p);
Json index_to_json(const SampledRegion& region, std::size_t node);
Json pattern_to_json(const PieceId& piece);
Json tuples_to_json(const SampledRegion& region, const std::vector<MTuple>& tuples);
Json segmentation_to_json(const SampledRegion& region, const Segmentation& seg,
                          const std::vector<SegmentLift>* lifts = nullptr);
Json diagnostics_to_json(const SampledRegion& region, const LiftResult& result);
Json check_to_json(const std::string& name, const std::string& verdict, const std::string& detail);

Json certificate_to_json(const Certificate& c);
Json audit_to_json(const AuditReport& r);

/// Serializes with a trailing newline; floats use the shortest round-trip form.
std::string dump(const Json& j);

}  // namespace symlift::io
