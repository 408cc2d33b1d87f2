#include "lsl/json_io.hpp"

#include <cstdio>
#include <ostream>

namespace lsl {

using nlohmann::json;

SurfaceDescriptor descriptor_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "sphere") {
    SphereDesc d;
    d.n = j.at("n").get<int>();
    d.r = j.at("r").get<Scalar>();
    return d;
  }
  if (kind == "cylinder") {
    CylinderDesc d;
    d.k = j.at("k").get<int>();
    d.n = j.at("n").get<int>();
    d.r0 = j.at("r0").get<Scalar>();
    if (j.contains("half_length")) d.half_length = j.at("half_length").get<Scalar>();
    return d;
  }
  if (kind == "curve") {
    CurveDesc d;
    for (const auto& p : j.at("points")) {
      if (!p.is_array() || p.size() != 2)
        throw std::invalid_argument("descriptor_from_json: curve points must be [x,y] pairs");
      d.points.emplace_back(p[0].get<Scalar>(), p[1].get<Scalar>());
    }
    return d;
  }
  if (kind == "plane") {
    PlaneDesc d;
    d.n = j.at("n").get<int>();
    return d;
  }
  if (kind == "profile") {
    ProfileDesc d;
    d.n = j.value("n", 2);
    for (const auto& p : j.at("points"))
      d.points.emplace_back(p[0].get<Scalar>(), p[1].get<Scalar>());
    return d;
  }
  throw std::invalid_argument("descriptor_from_json: unknown kind '" + kind + "'");
}

json descriptor_to_json(const SurfaceDescriptor& desc) {
  json j;
  if (const auto* s = std::get_if<SphereDesc>(&desc)) {
    j["kind"] = "sphere";
    j["n"] = s->n;
    j["r"] = s->r;
  } else if (const auto* c = std::get_if<CylinderDesc>(&desc)) {
    j["kind"] = "cylinder";
    j["k"] = c->k;
    j["n"] = c->n;
    j["r0"] = c->r0;
    j["half_length"] = c->half_length;
  } else if (const auto* p = std::get_if<PlaneDesc>(&desc)) {
    j["kind"] = "plane";
    j["n"] = p->n;
  } else if (const auto* cv = std::get_if<CurveDesc>(&desc)) {
    j["kind"] = "curve";
    json pts = json::array();
    for (const auto& p : cv->points) pts.push_back({p.x(), p.y()});
    j["points"] = pts;
  } else if (const auto* pr = std::get_if<ProfileDesc>(&desc)) {
    j["kind"] = "profile";
    j["n"] = pr->n;
    json pts = json::array();
    for (const auto& p : pr->points) pts.push_back({p.x(), p.y()});
    j["points"] = pts;
  }
  return j;
}

json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // Recover line/column from the byte offset.
    int line = 1, column = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw JsonParseError("malformed JSON at line " + std::to_string(line) + ", column " +
                             std::to_string(column) + ": " + e.what(),
                         line, column);
  }
}

json identity_report_to_json(const IdentityReport& report) {
  return json{{"name", report.name},
              {"residual", report.residual},
              {"tolerance", report.tolerance},
              {"pass", report.pass}};
}

std::string format_scalar(Scalar v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_csv_row(std::ostream& os, std::span<const std::string> cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) os << ',';
    os << cells[i];
  }
  os << '\n';
}

}  // namespace lsl
