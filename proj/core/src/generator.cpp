#include "sbrs/generator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "sbrs/errors.hpp"
#include "sbrs/rng.hpp"

namespace sbrs {

namespace {

struct Point {
  double x, y;
};

double sqdist(const Point& a, const Point& b) {
  const double dx = a.x - b.x, dy = a.y - b.y;
  return dx * dx + dy * dy;
}

// k-means++ seeding followed by Lloyd iterations. Ties (equal distances)
// always resolve to the lowest index, so the clustering is deterministic.
std::vector<int> kmeans(const std::vector<Point>& pts, int k, Rng& rng) {
  const int n = static_cast<int>(pts.size());
  std::vector<Point> centroids;
  centroids.reserve(k);

  std::vector<double> d2(n, std::numeric_limits<double>::infinity());
  centroids.push_back(pts[rng.uniform_int(0, n - 1)]);
  while (static_cast<int>(centroids.size()) < k) {
    double total = 0;
    for (int i = 0; i < n; ++i) {
      d2[i] = std::min(d2[i], sqdist(pts[i], centroids.back()));
      total += d2[i];
    }
    int pick = 0;
    if (total > 0) {
      const double r = rng.uniform01() * total;
      double acc = 0;
      pick = n - 1;
      for (int i = 0; i < n; ++i) {
        acc += d2[i];
        if (acc > r) {
          pick = i;
          break;
        }
      }
    }
    centroids.push_back(pts[pick]);
  }

  std::vector<int> assign(n, 0);
  for (int iter = 0; iter < 100; ++iter) {
    bool changed = false;
    for (int i = 0; i < n; ++i) {
      int best = 0;
      double bestd = sqdist(pts[i], centroids[0]);
      for (int c = 1; c < k; ++c) {
        const double d = sqdist(pts[i], centroids[c]);
        if (d < bestd) {
          bestd = d;
          best = c;
        }
      }
      if (assign[i] != best) {
        assign[i] = best;
        changed = true;
      }
    }

    std::vector<int> count(k, 0);
    std::vector<Point> sum(k, {0, 0});
    for (int i = 0; i < n; ++i) {
      count[assign[i]]++;
      sum[assign[i]].x += pts[i].x;
      sum[assign[i]].y += pts[i].y;
    }
    for (int c = 0; c < k; ++c) {
      if (count[c] == 0) {
        // Reseed an emptied cluster with the point farthest from its centroid.
        int far = 0;
        double fard = -1;
        for (int i = 0; i < n; ++i) {
          const double d = sqdist(pts[i], centroids[assign[i]]);
          if (d > fard) {
            fard = d;
            far = i;
          }
        }
        centroids[c] = pts[far];
        assign[far] = c;
        changed = true;
      } else {
        centroids[c] = {sum[c].x / count[c], sum[c].y / count[c]};
      }
    }
    if (!changed) break;
  }

  // Recompute final centroids and pick each cluster's school: the member
  // node nearest the centroid, lowest node id on ties.
  std::vector<int> count(k, 0);
  std::vector<Point> sum(k, {0, 0});
  for (int i = 0; i < n; ++i) {
    count[assign[i]]++;
    sum[assign[i]].x += pts[i].x;
    sum[assign[i]].y += pts[i].y;
  }
  for (int c = 0; c < k; ++c)
    if (count[c] > 0) centroids[c] = {sum[c].x / count[c], sum[c].y / count[c]};

  std::vector<int> school_of_cluster(k, -1);
  std::vector<double> best(k, std::numeric_limits<double>::infinity());
  for (int i = 0; i < n; ++i) {
    const int c = assign[i];
    const double d = sqdist(pts[i], centroids[c]);
    if (d < best[c]) {
      best[c] = d;
      school_of_cluster[c] = i;
    }
  }

  // Encode: result[i] = cluster index, school_of_cluster merged in by caller.
  std::vector<int> out(n + k);
  for (int i = 0; i < n; ++i) out[i] = assign[i];
  for (int c = 0; c < k; ++c) out[n + c] = school_of_cluster[c];
  return out;
}

}  // namespace

Instance generate_instance(int n_schools, int n_stops, std::uint64_t seed,
                           const GeneratorParams& params) {
  if (n_schools < 1) throw ValidationError("need at least one school");
  if (n_stops < n_schools)
    throw ValidationError("need at least one stop per school");

  const int n = n_schools + n_stops;
  for (std::uint64_t attempt = 0; attempt < 64; ++attempt) {
    Rng rng(seed, attempt);

    std::vector<Node> nodes(n);
    std::vector<Point> pts(n);
    for (int i = 0; i < n; ++i) {
      nodes[i].x = rng.uniform_int(0, static_cast<int>(params.square_side_ft));
      nodes[i].y = rng.uniform_int(0, static_cast<int>(params.square_side_ft));
      pts[i] = {static_cast<double>(nodes[i].x), static_cast<double>(nodes[i].y)};
    }

    const std::vector<int> enc = kmeans(pts, n_schools, rng);
    std::vector<int> cluster(enc.begin(), enc.begin() + n);
    std::vector<int> school_node(enc.begin() + n, enc.end());

    // A cluster whose school is its only member leaves that school without
    // stops; redraw everything from the next deterministic attempt stream.
    std::vector<int> cluster_size(n_schools, 0);
    for (int c : cluster) cluster_size[c]++;
    bool ok = true;
    for (int c = 0; c < n_schools; ++c)
      if (school_node[c] < 0 || cluster_size[c] < 2) ok = false;
    if (!ok) continue;

    // Schools ordered by node id; stops likewise. Ids carry the node index.
    std::vector<int> school_nodes_sorted = school_node;
    std::sort(school_nodes_sorted.begin(), school_nodes_sorted.end());
    std::vector<int> cluster_of_school_node(n, -1);
    for (int c = 0; c < n_schools; ++c) cluster_of_school_node[school_node[c]] = c;
    std::vector<std::string> school_id_of_cluster(n_schools);

    Instance inst;
    inst.capacity = params.capacity;
    inst.speed_mph = params.speed_mph;
    inst.square_side_ft = params.square_side_ft;
    inst.depot = {params.square_side_ft / 2, params.square_side_ft / 2};

    for (int node : school_nodes_sorted) {
      School k;
      k.id = "S" + std::to_string(node);
      k.pos = nodes[node];
      inst.schools.push_back(std::move(k));
      school_id_of_cluster[cluster_of_school_node[node]] = inst.schools.back().id;
    }
    for (int i = 0; i < n; ++i) {
      if (cluster_of_school_node[i] >= 0) continue;  // school node
      Stop s;
      s.id = "P" + std::to_string(i);
      s.pos = nodes[i];
      s.school = school_id_of_cluster[cluster[i]];
      inst.stops.push_back(std::move(s));
    }

    // Draws happen in node-id order so the stream layout is stable.
    for (Stop& s : inst.stops)
      s.students = rng.uniform_int(params.min_students, params.max_students);
    const int bell_slots = (params.bell_max_s - params.bell_min_s) / params.bell_step_s;
    for (School& k : inst.schools)
      k.bell_time_s = params.bell_min_s + params.bell_step_s * rng.uniform_int(0, bell_slots);

    inst.finalize();
    return inst;
  }
  throw InfeasibleError("instance generation kept producing stop-less schools; "
                        "increase stops per school");
}

}  // namespace sbrs
