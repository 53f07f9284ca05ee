#include "handtrack/svg.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace handtrack {
namespace {

std::string num(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string escape_xml(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_trajectory_map(std::span<const Trajectory> trajs, double frame_w, double frame_h,
                                  const TrajectoryMapStyle& style) {
  if (!(frame_w > 0.0) || !(frame_h > 0.0)) {
    throw std::invalid_argument("render_trajectory_map: frame dimensions must be positive");
  }

  std::vector<std::size_t> order(trajs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return trajs[a].identity < trajs[b].identity;
  });

  const std::string w = num(frame_w);
  const std::string h = num(frame_h);

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" xmlns:xlink=\"http://www.w3.org/1999/xlink\" "
         "version=\"1.1\" width=\"" + w + "\" height=\"" + h + "\" viewBox=\"0 0 " + w + " " + h +
         "\">\n";
  svg += "  <title>" + escape_xml(style.title) + "</title>\n";
  if (style.background_href) {
    svg += "  <image x=\"0\" y=\"0\" width=\"" + w + "\" height=\"" + h +
           "\" preserveAspectRatio=\"none\" xlink:href=\"" + escape_xml(*style.background_href) +
           "\"/>\n";
  }

  svg += "  <g id=\"trajectories\" fill=\"none\" stroke-width=\"" + num(style.stroke_width) +
         "\" stroke-linejoin=\"round\" stroke-linecap=\"round\">\n";
  std::size_t color_index = 0;
  std::vector<std::pair<int, std::string_view>> legend_rows;
  for (std::size_t idx : order) {
    const Trajectory& traj = trajs[idx];
    if (traj.points.empty()) continue;
    const std::string_view color = kTrajectoryPalette[color_index++ % kTrajectoryPalette.size()];
    legend_rows.emplace_back(traj.identity, color);

    std::string points;
    for (const auto& p : traj.points) {
      if (!points.empty()) points += ' ';
      points += num(p.x) + "," + num(p.y);
    }
    svg += "    <polyline id=\"track-" + std::to_string(traj.identity) + "\" stroke=\"" +
           std::string(color) + "\" points=\"" + points + "\"/>\n";
  }
  svg += "  </g>\n";

  if (style.legend) {
    svg += "  <g id=\"legend\" font-family=\"sans-serif\" font-size=\"12\">\n";
    double y = 8.0;
    for (const auto& [identity, color] : legend_rows) {
      svg += "    <rect x=\"8\" y=\"" + num(y) + "\" width=\"12\" height=\"12\" fill=\"" +
             std::string(color) + "\"/>\n";
      svg += "    <text x=\"26\" y=\"" + num(y + 10.0) + "\" fill=\"#000000\">hand " +
             std::to_string(identity) + "</text>\n";
      y += 16.0;
    }
    svg += "  </g>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace handtrack
