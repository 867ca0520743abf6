#pragma once

#include "sbrs/instance.hpp"

namespace sbrs {

// Three-school regression fixture for the greedy-decomposition pathology.
// School C (latest bell) needs two trips; school B can run either two short
// trips (27 min combined) or one long trip (exactly 30 min); school A's
// single trip reaches C but not B. Without weight adjustment the two short
// B-trips win and exhaust C's predecessor slots -> 3 buses; with the reduced
// assignment weight the single long trip wins and A chains into C -> 2 buses.
Instance make_slot_contention_fixture();

}  // namespace sbrs
