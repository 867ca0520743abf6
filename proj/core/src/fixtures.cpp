#include "sbrs/fixtures.hpp"

namespace sbrs {

Instance make_slot_contention_fixture() {
  Instance inst;
  inst.capacity = 66;
  inst.speed_mph = 20.0;
  inst.square_side_ft = 105600;
  inst.depot = {52800, 52800};

  inst.schools.push_back({"A", {100600, 95000}, 46800, {}});
  inst.schools.push_back({"B", {40000, 0}, 50400, {}});
  inst.schools.push_back({"C", {48000, 0}, 54000, {}});

  inst.stops.push_back({"a1", {100600, 95880}, 10, "A"});
  inst.stops.push_back({"b1", {46130, 0}, 10, "B"});
  inst.stops.push_back({"b2", {4070, 0}, 10, "B"});
  inst.stops.push_back({"c1", {48880, 0}, 40, "C"});
  inst.stops.push_back({"c2", {48000, 880}, 40, "C"});

  inst.finalize();
  return inst;
}

}  // namespace sbrs
