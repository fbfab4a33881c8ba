#include "mhm/report.hpp"

#include <cstdio>
#include <string>

#include "json.hpp"

namespace mhm {
namespace {

using json = nlohmann::json;

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

std::string cell(const Summary& s, double scale, int decimals) {
  return fixed(s.mean * scale, decimals) + " +/- " + fixed(s.standard_error * scale, decimals);
}

json summary_json(const Summary& s, double scale) {
  return {{"mean", s.mean * scale}, {"standard_error", s.standard_error * scale}, {"count", s.count}};
}

json distance_json(const TransformDistance& d) {
  return {{"total", d.reported()},
          {"cyan", d.channel[0] * d.report_scale},
          {"magenta", d.channel[1] * d.report_scale},
          {"yellow", d.channel[2] * d.report_scale}};
}

}  // namespace

std::string to_json(const EvalReport& report) {
  const double scale = kTransformDistanceReportScale;
  json images = json::array();
  for (const LooImageResult& r : report.images) {
    images.push_back({{"id", r.id},
                      {"identity_uniform", distance_json(r.identity_uniform)},
                      {"loo_uniform", distance_json(r.loo_uniform)},
                      {"identity_weighted", distance_json(r.identity_weighted)},
                      {"loo_weighted", distance_json(r.loo_weighted)}});
  }
  json doc = {
      {"report", "leave-one-out"},
      {"scale", scale},
      {"summary",
       {{"identity", {{"uniform", summary_json(report.identity_uniform, scale)},
                      {"weighted", summary_json(report.identity_weighted, scale)}}},
        {"leave_one_out", {{"uniform", summary_json(report.loo_uniform, scale)},
                           {"weighted", summary_json(report.loo_weighted, scale)}}}}},
      {"loo_wins", {{"uniform", report.loo_wins_uniform}, {"weighted", report.loo_wins_weighted}}},
      {"images", std::move(images)},
  };
  return doc.dump(2) + "\n";
}

std::string to_table(const EvalReport& report) {
  const double scale = kTransformDistanceReportScale;
  constexpr std::size_t kLabel = 26;
  constexpr std::size_t kCell = 20;
  std::string out;
  out += pad("", kLabel) + pad("Uniform Error", kCell) + "Weighted Error\n";
  out += pad("Identity Transformation", kLabel) +
         pad(cell(report.identity_uniform, scale, 3), kCell) +
         cell(report.identity_weighted, scale, 3) + "\n";
  out += pad("Leave-One-Out Estimator", kLabel) + pad(cell(report.loo_uniform, scale, 3), kCell) +
         cell(report.loo_weighted, scale, 3) + "\n";
  out += "\nLeave-one-out beats identity on " + std::to_string(report.loo_wins_uniform) + "/" +
         std::to_string(report.images.size()) + " images (uniform), " +
         std::to_string(report.loo_wins_weighted) + "/" + std::to_string(report.images.size()) +
         " (weighted). Errors are summed squared L2 distances x " + fixed(scale, 0) + ".\n\n";

  out += pad("image", kLabel) + pad("identity/unif", 16) + pad("loo/unif", 16) +
         pad("identity/wtd", 16) + "loo/wtd\n";
  for (const LooImageResult& r : report.images) {
    out += pad(r.id, kLabel) + pad(fixed(r.identity_uniform.reported(), 4), 16) +
           pad(fixed(r.loo_uniform.reported(), 4), 16) +
           pad(fixed(r.identity_weighted.reported(), 4), 16) +
           fixed(r.loo_weighted.reported(), 4) + "\n";
  }
  return out;
}

std::string to_json(const PixelDistanceReport& report) {
  json summary = json::object();
  for (std::size_t s = 0; s < 4; ++s) {
    summary[to_string(kAllPerceptualSpaces[s])] = {
        {"identity", summary_json(report.identity[s], 1.0)},
        {"corrected", summary_json(report.corrected[s], 1.0)},
        {"corrected_wins", report.corrected_wins[s]}};
  }
  json rows = json::array();
  for (const PixelDistanceRow& r : report.rows) {
    json identity = json::object();
    json corrected = json::object();
    for (std::size_t s = 0; s < 4; ++s) {
      identity[to_string(kAllPerceptualSpaces[s])] = r.identity[s];
      corrected[to_string(kAllPerceptualSpaces[s])] = r.corrected[s];
    }
    rows.push_back({{"id", r.id}, {"identity", identity}, {"corrected", corrected}});
  }
  json doc = {{"report", "pixel-distance"}, {"summary", summary}, {"images", rows}};
  return doc.dump(2) + "\n";
}

std::string to_table(const PixelDistanceReport& report) {
  constexpr std::size_t kLabel = 26;
  constexpr std::size_t kCell = 20;
  std::string out = pad("", kLabel);
  for (PerceptualSpace space : kAllPerceptualSpaces) out += pad(to_string(space), kCell);
  out += "\n" + pad("Identity Transformation", kLabel);
  for (const Summary& s : report.identity) out += pad(cell(s, 1.0, 2), kCell);
  out += "\n" + pad("Median Estimator", kLabel);
  for (const Summary& s : report.corrected) out += pad(cell(s, 1.0, 2), kCell);
  out += "\n\nCorrected image is closer to the reference edit on";
  for (std::size_t s = 0; s < 4; ++s) {
    out += std::string(s == 0 ? " " : ", ") + std::to_string(report.corrected_wins[s]) + "/" +
           std::to_string(report.rows.size()) + " (" + to_string(kAllPerceptualSpaces[s]) + ")";
  }
  out += ". Distances are mean per-pixel Euclidean.\n\n";
  out += pad("image", kLabel);
  for (PerceptualSpace space : kAllPerceptualSpaces) {
    out += pad(std::string(to_string(space)) + " id/cor", kCell);
  }
  out += "\n";
  for (const PixelDistanceRow& r : report.rows) {
    out += pad(r.id, kLabel);
    for (std::size_t s = 0; s < 4; ++s) {
      out += pad(fixed(r.identity[s], 2) + "/" + fixed(r.corrected[s], 2), kCell);
    }
    out += "\n";
  }
  return out;
}

}  // namespace mhm
