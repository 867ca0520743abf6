#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sbrs/errors.hpp"

namespace sbrs {

// Planar point, coordinates in feet.
struct Node {
  long long x = 0;
  long long y = 0;
};

struct School {
  std::string id;
  Node pos;
  int bell_time_s = 0;               // afternoon dismissal, seconds after midnight
  std::vector<std::string> stops;    // derived: ids of stops assigned to this school
};

struct Stop {
  std::string id;
  Node pos;
  int students = 0;
  std::string school;                // owning school id
};

// One afternoon planning problem: schools with dismissal times, stops with
// student counts, a shared depot and fleet parameters.
struct Instance {
  int capacity = 66;                 // bus seat capacity
  double speed_mph = 20.0;
  long long square_side_ft = 105600; // service area is [0, side]^2
  Node depot;
  std::vector<School> schools;
  std::vector<Stop> stops;

  // Rebuilds lookup tables and checks every structural invariant; throws
  // ValidationError naming the offending field. Must be called after any
  // manual mutation of the containers above.
  void finalize();

  const School& school(const std::string& id) const;
  const Stop& stop(const std::string& id) const;
  bool has_school(const std::string& id) const { return school_by_id_.count(id) > 0; }

 private:
  std::map<std::string, std::size_t> school_by_id_;
  std::map<std::string, std::size_t> stop_by_id_;
};

// Bus driving time between two points in whole seconds, rounded up:
// ceil(euclidean_feet * 3600 / (mph * 5280)). Zero iff a == b.
int leg_duration(const Node& a, const Node& b, double speed_mph);

long long total_students(const School& k, const Instance& inst);

// Minimum number of trips a school needs: ceil(total students / capacity).
int compute_mnt(const School& k, const Instance& inst);

Instance load_instance(const std::string& path);
void save_instance(const Instance& inst, const std::string& path);

// JSON text of an instance (the exact bytes save_instance writes).
std::string instance_to_json(const Instance& inst);
Instance instance_from_json(const std::string& text, const std::string& origin = "<string>");

}  // namespace sbrs
