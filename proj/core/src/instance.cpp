#include "sbrs/instance.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace sbrs {

using nlohmann::json;

int leg_duration(const Node& a, const Node& b, double speed_mph) {
  const double dx = static_cast<double>(a.x - b.x);
  const double dy = static_cast<double>(a.y - b.y);
  if (dx == 0 && dy == 0) return 0;
  const double dist_ft = std::sqrt(dx * dx + dy * dy);
  const double seconds = dist_ft * 3600.0 / (speed_mph * 5280.0);
  // Guard against sqrt ulp noise pushing an exact boundary over the ceiling.
  return static_cast<int>(std::ceil(seconds - 1e-9));
}

long long total_students(const School& k, const Instance& inst) {
  long long total = 0;
  for (const auto& sid : k.stops) total += inst.stop(sid).students;
  return total;
}

int compute_mnt(const School& k, const Instance& inst) {
  const long long students = total_students(k, inst);
  return static_cast<int>((students + inst.capacity - 1) / inst.capacity);
}

void Instance::finalize() {
  school_by_id_.clear();
  stop_by_id_.clear();

  if (capacity <= 0) throw ValidationError("capacity must be positive");
  if (speed_mph <= 0) throw ValidationError("speed_mph must be positive");
  if (square_side_ft <= 0) throw ValidationError("square_side_ft must be positive");

  auto check_node = [&](const Node& n, const std::string& what) {
    if (n.x < 0 || n.x > square_side_ft || n.y < 0 || n.y > square_side_ft)
      throw ValidationError(what + ": coordinates outside [0, " +
                            std::to_string(square_side_ft) + "]^2");
  };
  check_node(depot, "depot");

  for (std::size_t i = 0; i < schools.size(); ++i) {
    School& k = schools[i];
    if (k.id.empty()) throw ValidationError("schools[" + std::to_string(i) + "].id empty");
    if (!school_by_id_.emplace(k.id, i).second)
      throw ValidationError("duplicate school id '" + k.id + "'");
    check_node(k.pos, "school '" + k.id + "'");
    if (k.bell_time_s < 0 || k.bell_time_s >= 24 * 3600)
      throw ValidationError("school '" + k.id + "': bell_time_s outside [0, 86400)");
    k.stops.clear();  // rebuilt from stop ownership below
  }

  for (std::size_t i = 0; i < stops.size(); ++i) {
    const Stop& s = stops[i];
    if (s.id.empty()) throw ValidationError("stops[" + std::to_string(i) + "].id empty");
    if (!stop_by_id_.emplace(s.id, i).second)
      throw ValidationError("stop '" + s.id + "' claimed more than once");
    check_node(s.pos, "stop '" + s.id + "'");
    if (s.students < 1)
      throw ValidationError("stop '" + s.id + "': students must be at least 1");
    if (s.students > capacity)
      throw ValidationError("stop '" + s.id + "': students exceed bus capacity");
    auto it = school_by_id_.find(s.school);
    if (it == school_by_id_.end())
      throw ValidationError("stop '" + s.id + "': unknown school '" + s.school + "'");
    schools[it->second].stops.push_back(s.id);
  }

  for (const School& k : schools)
    if (k.stops.empty())
      throw ValidationError("school '" + k.id + "' has no stops");
}

const School& Instance::school(const std::string& id) const {
  auto it = school_by_id_.find(id);
  if (it == school_by_id_.end()) throw ValidationError("unknown school '" + id + "'");
  return schools[it->second];
}

const Stop& Instance::stop(const std::string& id) const {
  auto it = stop_by_id_.find(id);
  if (it == stop_by_id_.end()) throw ValidationError("unknown stop '" + id + "'");
  return stops[it->second];
}

namespace {

long long get_int(const json& j, const std::string& key, const std::string& ctx) {
  if (!j.contains(key))
    throw ParseError(ctx + ": missing field '" + key + "'");
  if (!j[key].is_number_integer())
    throw ParseError(ctx + ": field '" + key + "' must be an integer");
  return j[key].get<long long>();
}

double get_num(const json& j, const std::string& key, const std::string& ctx) {
  if (!j.contains(key))
    throw ParseError(ctx + ": missing field '" + key + "'");
  if (!j[key].is_number())
    throw ParseError(ctx + ": field '" + key + "' must be a number");
  return j[key].get<double>();
}

std::string get_str(const json& j, const std::string& key, const std::string& ctx) {
  if (!j.contains(key))
    throw ParseError(ctx + ": missing field '" + key + "'");
  if (!j[key].is_string())
    throw ParseError(ctx + ": field '" + key + "' must be a string");
  return j[key].get<std::string>();
}

}  // namespace

Instance instance_from_json(const std::string& text, const std::string& origin) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(origin + ": " + e.what());
  }
  if (!j.is_object()) throw ParseError(origin + ": top level must be an object");

  Instance inst;
  inst.capacity = static_cast<int>(get_int(j, "capacity", origin));
  inst.speed_mph = get_num(j, "speed_mph", origin);
  inst.square_side_ft = get_int(j, "square_side_ft", origin);
  if (!j.contains("depot") || !j["depot"].is_object())
    throw ParseError(origin + ": missing object field 'depot'");
  inst.depot.x = get_int(j["depot"], "x", origin + ": depot");
  inst.depot.y = get_int(j["depot"], "y", origin + ": depot");

  if (!j.contains("schools") || !j["schools"].is_array())
    throw ParseError(origin + ": missing array field 'schools'");
  for (std::size_t i = 0; i < j["schools"].size(); ++i) {
    const json& js = j["schools"][i];
    const std::string ctx = origin + ": schools[" + std::to_string(i) + "]";
    School k;
    k.id = get_str(js, "id", ctx);
    k.pos.x = get_int(js, "x", ctx);
    k.pos.y = get_int(js, "y", ctx);
    k.bell_time_s = static_cast<int>(get_int(js, "bell_time_s", ctx));
    inst.schools.push_back(std::move(k));
  }

  if (!j.contains("stops") || !j["stops"].is_array())
    throw ParseError(origin + ": missing array field 'stops'");
  for (std::size_t i = 0; i < j["stops"].size(); ++i) {
    const json& js = j["stops"][i];
    const std::string ctx = origin + ": stops[" + std::to_string(i) + "]";
    Stop s;
    s.id = get_str(js, "id", ctx);
    s.pos.x = get_int(js, "x", ctx);
    s.pos.y = get_int(js, "y", ctx);
    s.students = static_cast<int>(get_int(js, "students", ctx));
    s.school = get_str(js, "school", ctx);
    inst.stops.push_back(std::move(s));
  }

  inst.finalize();
  return inst;
}

std::string instance_to_json(const Instance& inst) {
  json j;
  j["capacity"] = inst.capacity;
  j["speed_mph"] = inst.speed_mph;
  j["square_side_ft"] = inst.square_side_ft;
  j["depot"] = {{"x", inst.depot.x}, {"y", inst.depot.y}};
  j["schools"] = json::array();
  for (const School& k : inst.schools)
    j["schools"].push_back({{"id", k.id},
                            {"x", k.pos.x},
                            {"y", k.pos.y},
                            {"bell_time_s", k.bell_time_s}});
  j["stops"] = json::array();
  for (const Stop& s : inst.stops)
    j["stops"].push_back({{"id", s.id},
                          {"x", s.pos.x},
                          {"y", s.pos.y},
                          {"students", s.students},
                          {"school", s.school}});
  return j.dump(2) + "\n";
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return instance_from_json(buf.str(), path);
}

void save_instance(const Instance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << instance_to_json(inst);
}

}  // namespace sbrs
