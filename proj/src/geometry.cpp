#include "foldcurve/geometry.hpp"

#include <algorithm>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "foldcurve/convolution.hpp"
#include "foldcurve/parallel.hpp"

namespace foldcurve {

using nlohmann::json;

Dyadic squared_distance(const DyadicPoint& x, const Segment& s) {
  Dyadic sum(0);
  for (int i = 0; i < x.dim(); ++i) {
    Dyadic lo(s.base[i]);
    Dyadic hi = i == s.axis ? Dyadic(s.base[i] + 1) : lo;
    Dyadic d(0);
    if (x[i] < lo) d = lo - x[i];
    else if (x[i] > hi) d = x[i] - hi;
    sum = sum + d * d;
  }
  return sum;
}

Segment nearest_segment(const DyadicPoint& x, const std::vector<Segment>& candidates) {
  if (candidates.empty()) throw Error(ErrorCode::InvalidArgument, "nearest_segment needs candidates");
  std::vector<Segment> sorted = candidates;
  std::sort(sorted.begin(), sorted.end());
  const Segment* best = &sorted.front();
  Dyadic bd = squared_distance(x, *best);
  for (const auto& s : sorted) {
    Dyadic d = squared_distance(x, s);
    if (d < bd) {
      bd = d;
      best = &s;
    }
  }
  return *best;
}

namespace {

Coord floor_dyadic(const Dyadic& d) { return floor_div(d.num(), Coord{1} << d.exp()); }

}  // namespace

Segment nearest_grid_segment(const DyadicPoint& x) {
  const int n = x.dim();
  Point f(n);
  for (int i = 0; i < n; ++i) f[i] = floor_dyadic(x[i]);
  // Every segment within Chebyshev distance < 1 of x: enough, since the
  // nearest lattice point is closer than 1.
  std::vector<Segment> cands;
  for (int axis = 0; axis < n; ++axis)
    for (int mask = 0; mask < (1 << n); ++mask) {
      Point b = f;
      for (int i = 0; i < n; ++i) {
        int bit = (mask >> i) & 1;
        b[i] += i == axis ? bit - 1 : bit;
      }
      cands.push_back({b, axis});
    }
  return nearest_segment(x, cands);
}

Curve fractal_curve(int s) {
  if (s < 0) throw Error(ErrorCode::InvalidArgument, "fractal level must be >= 0");
  return curve_of_power(s + 1, Point{0, 0, 0}, Direction{0, 1});
}

VoxelSet voxelize(const Curve& curve, int s, Coord resolution, int jobs) {
  if (resolution < 1 || (resolution & (resolution - 1)) != 0)
    throw Error(ErrorCode::InvalidArgument, "resolution must be a power of two");
  if (curve.dim() != 3) throw Error(ErrorCode::InvalidArgument, "voxelize works in dimension 3");
  auto on_curve = curve.segments();
  std::sort(on_curve.begin(), on_curve.end());

  Point lo = curve.front(), hi = curve.front();
  for (const auto& p : curve.path())
    for (int i = 0; i < 3; ++i) {
      lo[i] = std::min(lo[i], p[i]);
      hi[i] = std::max(hi[i], p[i]);
    }
  const Coord scale = Coord{1} << s;
  const Coord D = 2 * resolution;  // lattice unit = D ticks
  std::array<Coord, 3> kmin{}, kmax{};
  for (int i = 0; i < 3; ++i) {
    kmin[static_cast<std::size_t>(i)] = floor_div((lo[i] - 1) * resolution, scale) - 1;
    kmax[static_cast<std::size_t>(i)] = floor_div((hi[i] + 1) * resolution + scale - 1, scale) + 1;
  }
  const auto span = static_cast<std::size_t>(kmax[0] - kmin[0] + 1);
  std::vector<std::vector<std::array<Coord, 3>>> slabs(span);
  std::vector<std::size_t> slab_ties(span, 0);

  parallel_for(span, jobs, [&](std::size_t si) {
    const Coord k0 = kmin[0] + static_cast<Coord>(si);
    for (Coord k1 = kmin[1]; k1 <= kmax[1]; ++k1)
      for (Coord k2 = kmin[2]; k2 <= kmax[2]; ++k2) {
        const std::array<Coord, 3> k{k0, k1, k2};
        std::array<Coord, 3> N{}, f{};
        for (std::size_t i = 0; i < 3; ++i) {
          N[i] = scale * (2 * k[i] + 1);
          f[i] = floor_div(N[i], D);
        }
        Coord best = -1;
        Segment best_seg;
        int ties = 0;
        // candidates in sorted order: by base then axis
        std::vector<Segment> cands;
        cands.reserve(24);
        for (int axis = 0; axis < 3; ++axis)
          for (int mask = 0; mask < 8; ++mask) {
            Point b{f[0], f[1], f[2]};
            for (int i = 0; i < 3; ++i) {
              int bit = (mask >> i) & 1;
              b[i] += i == axis ? bit - 1 : bit;
            }
            cands.push_back({b, axis});
          }
        std::sort(cands.begin(), cands.end());
        for (const auto& c : cands) {
          Coord d2 = 0;
          for (int i = 0; i < 3; ++i) {
            Coord a = c.base[i] * D, b = (c.base[i] + (i == c.axis ? 1 : 0)) * D;
            Coord v = N[static_cast<std::size_t>(i)];
            Coord d = v < a ? a - v : (v > b ? v - b : 0);
            d2 += d * d;
          }
          if (best < 0 || d2 < best) {
            best = d2;
            best_seg = c;
            ties = 1;
          } else if (d2 == best) {
            ++ties;
          }
        }
        if (std::binary_search(on_curve.begin(), on_curve.end(), best_seg)) {
          slabs[si].push_back(k);
          if (ties > 1) ++slab_ties[si];
        }
      }
  });
  VoxelSet out;
  out.s = s;
  out.resolution = resolution;
  for (std::size_t i = 0; i < span; ++i) {
    out.voxels.insert(out.voxels.end(), slabs[i].begin(), slabs[i].end());
    out.ties += slab_ties[i];
  }
  return out;
}

VoxelSet fractal_voxelize(int s, Coord resolution, int jobs) {
  return voxelize(fractal_curve(s), s, resolution, jobs);
}

// ---------------------------------------------------------------- text formats

std::string curve_to_obj(const Curve& c) {
  std::ostringstream os;
  os << "# curve with " << c.size() << " segments\n";
  for (const auto& p : c.path()) {
    os << "v";
    for (int i = 0; i < 3; ++i) os << ' ' << (i < p.dim() ? p[i] : 0);
    os << '\n';
  }
  os << 'l';
  for (std::size_t i = 1; i <= c.path().size(); ++i) os << ' ' << i;
  os << '\n';
  return os.str();
}

std::string voxels_to_obj(const VoxelSet& v) {
  std::ostringstream os;
  os << "# " << v.voxels.size() << " voxels, edge 1/" << v.resolution << " in the 2^-" << v.s
     << " frame, integer voxel coordinates\n";
  static constexpr int kFaces[6][4] = {{0, 2, 3, 1}, {4, 5, 7, 6}, {0, 1, 5, 4},
                                       {2, 6, 7, 3}, {0, 4, 6, 2}, {1, 3, 7, 5}};
  std::size_t base = 1;
  for (const auto& k : v.voxels) {
    for (int corner = 0; corner < 8; ++corner)
      os << "v " << k[0] + ((corner >> 2) & 1) << ' ' << k[1] + ((corner >> 1) & 1) << ' ' << k[2] + (corner & 1)
         << '\n';
    for (const auto& f : kFaces) {
      os << 'f';
      for (int idx : f) os << ' ' << base + static_cast<std::size_t>(idx);
      os << '\n';
    }
    base += 8;
  }
  return os.str();
}

std::string curve_to_svg(const Curve& c, int scale) {
  if (c.dim() != 2) throw Error(ErrorCode::InvalidArgument, "svg export needs a planar curve");
  Coord minx = c.front()[0], maxx = minx, miny = c.front()[1], maxy = miny;
  for (const auto& p : c.path()) {
    minx = std::min(minx, p[0]);
    maxx = std::max(maxx, p[0]);
    miny = std::min(miny, p[1]);
    maxy = std::max(maxy, p[1]);
  }
  // y flipped so that e2 points up
  auto X = [&](Coord x) { return (x - minx + 1) * scale; };
  auto Y = [&](Coord y) { return (maxy - y + 1) * scale; };
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << (maxx - minx + 2) * scale << "\" height=\""
     << (maxy - miny + 2) * scale << "\">\n";
  os << "<path fill=\"none\" stroke=\"black\" d=\"M " << X(c.front()[0]) << ' ' << Y(c.front()[1]);
  for (std::size_t i = 1; i < c.path().size(); ++i) os << " L " << X(c.path()[i][0]) << ' ' << Y(c.path()[i][1]);
  os << "\"/>\n</svg>\n";
  return os.str();
}

namespace {

json point_json(const Point& p) {
  json a = json::array();
  for (int i = 0; i < p.dim(); ++i) a.push_back(p[i]);
  return a;
}

Point point_from(const json& a, int dim) {
  if (!a.is_array() || static_cast<int>(a.size()) != dim) throw Error(ErrorCode::Parse, "point has wrong arity");
  Point p(dim);
  for (int i = 0; i < dim; ++i) p[i] = a.at(static_cast<std::size_t>(i)).get<Coord>();
  return p;
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("malformed JSON: ") + e.what());
  }
}

int read_dim(const json& j) {
  if (!j.is_object() || !j.contains("dim")) throw Error(ErrorCode::Parse, "missing \"dim\"");
  int dim = j["dim"].get<int>();
  if (dim < 1 || dim > kMaxDim) throw Error(ErrorCode::Parse, "unsupported dimension");
  return dim;
}

}  // namespace

std::string curve_to_json(const Curve& c) {
  json j;
  j["dim"] = c.dim();
  json pts = json::array();
  for (const auto& p : c.path()) pts.push_back(point_json(p));
  j["points"] = pts;
  return j.dump() + "\n";
}

Curve curve_from_json(const std::string& text) {
  json j = parse_json(text);
  const int dim = read_dim(j);
  if (!j.contains("points")) throw Error(ErrorCode::Parse, "missing \"points\"");
  std::vector<Point> pts;
  try {
    for (const auto& a : j["points"]) pts.push_back(point_from(a, dim));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, e.what());
  }
  return Curve(std::move(pts));
}

std::string window_to_json(const Window& w) {
  json j;
  j["dim"] = w.dim();
  json segs = json::array();
  for (const auto& s : w.segments()) {
    json a = point_json(s.base);
    a.push_back(s.axis + 1);
    segs.push_back(a);
  }
  json cons = json::array();
  for (const auto& c : w.connexions()) cons.push_back({{"at", point_json(c.at)}, {"dirs", {c.a.code(), c.b.code()}}});
  j["segments"] = segs;
  j["connexions"] = cons;
  return j.dump() + "\n";
}

Window window_from_json(const std::string& text) {
  json j = parse_json(text);
  const int dim = read_dim(j);
  std::vector<Segment> segs;
  std::vector<Connexion> cons;
  try {
    for (const auto& a : j.at("segments")) {
      if (!a.is_array() || static_cast<int>(a.size()) != dim + 1) throw Error(ErrorCode::Parse, "bad segment entry");
      Point b(dim);
      for (int i = 0; i < dim; ++i) b[i] = a[static_cast<std::size_t>(i)].get<Coord>();
      int axis = a[static_cast<std::size_t>(dim)].get<int>();
      if (axis < 1 || axis > dim) throw Error(ErrorCode::Parse, "bad segment axis");
      segs.push_back({b, axis - 1});
    }
    if (j.contains("connexions"))
      for (const auto& c : j["connexions"]) {
        const auto& d = c.at("dirs");
        if (!d.is_array() || d.size() != 2) throw Error(ErrorCode::Parse, "connexion needs two directions");
        cons.push_back(Connexion::make(point_from(c.at("at"), dim), Direction::from_code(d[0].get<int>()),
                                       Direction::from_code(d[1].get<int>())));
      }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, e.what());
  }
  return Window(dim, std::move(segs), std::move(cons));
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
  out << content;
  if (!out) throw Error(ErrorCode::Io, "write failed for " + path);
}

}  // namespace foldcurve
