#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace roadcast {

constexpr double kEarthRadiusM = 6371000.0;
constexpr double kDegToRad = 0.017453292519943295;

/// A longitude/latitude pair in degrees.
struct GeoPoint {
    double lon = 0.0;
    double lat = 0.0;
};

inline bool valid(const GeoPoint& p) {
    return p.lon >= -180.0 && p.lon <= 180.0 && p.lat >= -90.0 && p.lat <= 90.0;
}

/// Straight segment between two points, in lon/lat space. May degenerate to a point.
struct GeoSegment {
    GeoPoint a;
    GeoPoint b;
};

struct Cell {
    int x = 0;  // column
    int y = 0;  // row
    bool operator==(const Cell& o) const { return x == o.x && y == o.y; }
};

/// Uniform R x C partition of a lon/lat bounding box. Cell (0,0) is the
/// min-lon/min-lat corner; points on the max boundary clamp into the last cell.
class GridMap {
public:
    GridMap(double lon_min, double lat_min, double lon_max, double lat_max, int rows, int cols);

    /// The default city grid: 72 x 68 cells over (116.10, 39.69, 116.71, 40.18).
    static GridMap default_grid();

    double lon_min() const { return lon_min_; }
    double lat_min() const { return lat_min_; }
    double lon_max() const { return lon_max_; }
    double lat_max() const { return lat_max_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    bool contains(const GeoPoint& p) const;

    /// Cell of p, or nullopt if p lies strictly outside the bounding box.
    std::optional<Cell> try_to_cell(const GeoPoint& p) const;

    /// Cell of p; throws std::out_of_range if p lies strictly outside the box.
    Cell to_cell(const GeoPoint& p) const;

    /// Geographic center of a cell.
    GeoPoint cell_center(const Cell& c) const;

private:
    double lon_min_, lat_min_, lon_max_, lat_max_;
    int rows_, cols_;
};

/// Equirectangular ground distance in meters:
/// R * sqrt(dlat^2 + (cos(lat_mean) * dlon)^2), angles in radians.
double distance_m(const GeoPoint& p, const GeoPoint& q);

/// Minimum distance in meters from p to the closed segment s, computed in an
/// equirectangular plane. Never exceeds the distance to either endpoint; equals
/// distance_m(p, s.a) when the segment degenerates to a point.
double point_to_segment_m(const GeoPoint& p, const GeoSegment& s);

}  // namespace roadcast
