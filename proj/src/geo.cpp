#include "roadcast/geo.hpp"

#include <algorithm>
#include <cmath>

namespace roadcast {

GridMap::GridMap(double lon_min, double lat_min, double lon_max, double lat_max, int rows, int cols)
    : lon_min_(lon_min), lat_min_(lat_min), lon_max_(lon_max), lat_max_(lat_max), rows_(rows), cols_(cols) {
    if (!(lon_min < lon_max) || !(lat_min < lat_max))
        throw std::invalid_argument("GridMap: degenerate bounding box");
    if (rows < 1 || cols < 1)
        throw std::invalid_argument("GridMap: rows and cols must be >= 1");
}

GridMap GridMap::default_grid() {
    return GridMap(116.10, 39.69, 116.71, 40.18, 72, 68);
}

bool GridMap::contains(const GeoPoint& p) const {
    return p.lon >= lon_min_ && p.lon <= lon_max_ && p.lat >= lat_min_ && p.lat <= lat_max_;
}

std::optional<Cell> GridMap::try_to_cell(const GeoPoint& p) const {
    if (!contains(p)) return std::nullopt;
    const double cell_w = (lon_max_ - lon_min_) / cols_;
    const double cell_h = (lat_max_ - lat_min_) / rows_;
    int x = static_cast<int>(std::floor((p.lon - lon_min_) / cell_w));
    int y = static_cast<int>(std::floor((p.lat - lat_min_) / cell_h));
    x = std::min(x, cols_ - 1);
    y = std::min(y, rows_ - 1);
    return Cell{x, y};
}

Cell GridMap::to_cell(const GeoPoint& p) const {
    auto c = try_to_cell(p);
    if (!c)
        throw std::out_of_range("GridMap::to_cell: point (" + std::to_string(p.lon) + ", " +
                                std::to_string(p.lat) + ") outside bounding box");
    return *c;
}

GeoPoint GridMap::cell_center(const Cell& c) const {
    const double cell_w = (lon_max_ - lon_min_) / cols_;
    const double cell_h = (lat_max_ - lat_min_) / rows_;
    return GeoPoint{lon_min_ + (c.x + 0.5) * cell_w, lat_min_ + (c.y + 0.5) * cell_h};
}

double distance_m(const GeoPoint& p, const GeoPoint& q) {
    const double dlat = (q.lat - p.lat) * kDegToRad;
    const double dlon = (q.lon - p.lon) * kDegToRad;
    const double lat_mean = 0.5 * (p.lat + q.lat) * kDegToRad;
    const double x = dlon * std::cos(lat_mean);
    return kEarthRadiusM * std::sqrt(dlat * dlat + x * x);
}

double point_to_segment_m(const GeoPoint& p, const GeoSegment& s) {
    // Project into a plane whose longitude scale matches distance_m at the
    // latitude midway between p and the segment midpoint, so degenerate
    // segments reproduce distance_m exactly.
    const double mid_lat = 0.5 * (s.a.lat + s.b.lat);
    const double k = std::cos(0.5 * (p.lat + mid_lat) * kDegToRad);

    const double ax = (s.a.lon - p.lon) * kDegToRad * k;
    const double ay = (s.a.lat - p.lat) * kDegToRad;
    const double bx = (s.b.lon - p.lon) * kDegToRad * k;
    const double by = (s.b.lat - p.lat) * kDegToRad;

    const double dx = bx - ax;
    const double dy = by - ay;
    const double len2 = dx * dx + dy * dy;
    double planar;
    if (len2 == 0.0) {
        planar = kEarthRadiusM * std::sqrt(ax * ax + ay * ay);
    } else {
        double t = -(ax * dx + ay * dy) / len2;
        t = std::clamp(t, 0.0, 1.0);
        const double cx = ax + t * dx;
        const double cy = ay + t * dy;
        planar = kEarthRadiusM * std::sqrt(cx * cx + cy * cy);
    }
    return std::min({planar, distance_m(p, s.a), distance_m(p, s.b)});
}

}  // namespace roadcast
