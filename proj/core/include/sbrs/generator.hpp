#pragma once

#include <cstdint>

#include "sbrs/instance.hpp"

namespace sbrs {

struct GeneratorParams {
  long long square_side_ft = 105600;  // 20 miles
  int capacity = 66;
  double speed_mph = 20.0;
  int min_students = 1;
  int max_students = 20;
  int bell_min_s = 43200;   // 12:00
  int bell_max_s = 57600;   // 16:00
  int bell_step_s = 900;    // 15-minute grid
};

// Seeded random instance: n_schools + n_stops nodes drawn uniformly on the
// square, clustered by k-means (k-means++ seeding, Lloyd iterations); in each
// cluster the node nearest the centroid becomes the school, the rest its
// stops. Depot at the square's center. Student counts and bell times drawn
// uniformly from the params' ranges. Same arguments -> byte-identical result.
Instance generate_instance(int n_schools, int n_stops, std::uint64_t seed,
                           const GeneratorParams& params = {});

}  // namespace sbrs
