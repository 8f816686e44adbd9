// Copyright 2026 The dcpm Authors.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dcpm/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace dcpm {
namespace {

using nlohmann::json;

json parse_document(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::exception& e) {
    throw Error(std::string("malformed JSON: ") + e.what());
  }
}

template <typename T>
T field(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw Error(std::string("missing field '") + key + "'");
  }
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(std::string("bad field '") + key + "': " + e.what());
  }
}

template <typename T>
T field_or(const json& obj, const char* key, T fallback) {
  if (!obj.is_object() || !obj.contains(key)) return fallback;
  return field<T>(obj, key);
}

// Slot counts and ids must be integral even when written as 3.0.
int integral_field(const json& obj, const char* key) {
  const double v = field<double>(obj, key);
  if (!std::isfinite(v) || std::floor(v) != v ||
      std::abs(v) > static_cast<double>(std::numeric_limits<int>::max())) {
    throw Error(std::string("field '") + key + "' must be an integer");
  }
  return static_cast<int>(v);
}

const json& array_field(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key) || !obj.at(key).is_array()) {
    throw Error(std::string("missing array '") + key + "'");
  }
  return obj.at(key);
}

}  // namespace

Instance parse_instance(std::string_view json_text) {
  const json doc = parse_document(json_text);
  Instance inst;
  for (const auto& s : array_field(doc, "servers")) {
    inst.servers.push_back({integral_field(s, "id"), field<double>(s, "speed"),
                            field_or<bool>(s, "initially_on", true)});
  }
  for (const auto& j : array_field(doc, "jobs")) {
    inst.jobs.push_back({integral_field(j, "id"), field<double>(j, "demand"),
                         integral_field(j, "arrival_slot"),
                         integral_field(j, "deadline_slots")});
  }
  if (!doc.contains("energy")) throw Error("missing object 'energy'");
  const json& e = doc.at("energy");
  inst.energy.tau = field<double>(e, "tau");
  inst.energy.e_slot = field<double>(e, "e_slot");
  inst.energy.e_on = field<double>(e, "e_on");
  inst.energy.n_on = integral_field(e, "n_on");
  return inst;
}

std::string serialize_instance(const Instance& instance) {
  json doc;
  doc["servers"] = json::array();
  for (const auto& s : instance.servers) {
    doc["servers"].push_back(
        {{"id", s.id}, {"speed", s.speed}, {"initially_on", s.initially_on}});
  }
  doc["jobs"] = json::array();
  for (const auto& j : instance.jobs) {
    doc["jobs"].push_back({{"id", j.id},
                           {"demand", j.demand},
                           {"arrival_slot", j.arrival_slot},
                           {"deadline_slots", j.deadline_slots}});
  }
  doc["energy"] = {{"tau", instance.energy.tau},
                   {"e_slot", instance.energy.e_slot},
                   {"e_on", instance.energy.e_on},
                   {"n_on", instance.energy.n_on}};
  return doc.dump(2) + "\n";
}

OnlineParams parse_online_params(std::string_view json_text) {
  const json doc = parse_document(json_text);
  OnlineParams p;
  p.t_wait = field<double>(doc, "t_wait");
  p.n_ja = integral_field(doc, "n_ja");
  p.wait_all_idle = field_or<bool>(doc, "wait_all_idle", false);
  p.literal_activation_count = field_or<bool>(doc, "literal_activation_count", false);
  return p;
}

std::string serialize_online_params(const OnlineParams& params) {
  json doc = {{"t_wait", params.t_wait}, {"n_ja", params.n_ja}};
  if (params.wait_all_idle) doc["wait_all_idle"] = true;
  if (params.literal_activation_count) doc["literal_activation_count"] = true;
  return doc.dump(2) + "\n";
}

std::string serialize_schedule(const Schedule& schedule) {
  json doc;
  doc["t_max"] = schedule.t_max();
  doc["slots"] = json::array();
  for (int t = 1; t <= schedule.t_max(); ++t) {
    json servers = json::object();
    for (int id : schedule.server_ids()) {
      const int cell = schedule.at(t, id);
      servers[std::to_string(id)] = cell == kOff    ? std::string("off")
                                    : cell == kIdle ? std::string("idle")
                                                    : "job:" + std::to_string(cell);
    }
    doc["slots"].push_back({{"slot", t}, {"servers", servers}});
  }
  doc["setup"] = json::array();
  for (const auto& [slot, server] : schedule.setup) doc["setup"].push_back({slot, server});
  doc["unserved"] = json::array();
  for (const auto& [slot, job] : schedule.unserved) doc["unserved"].push_back({slot, job});
  return doc.dump(2) + "\n";
}

std::string serialize_run_summary(const RunResult& result) {
  const json doc = {{"total_energy", result.total_energy},
                    {"jobs_within_deadline", result.jobs_within_deadline},
                    {"jobs_completed", result.jobs_completed},
                    {"slots", result.slots}};
  return doc.dump(2) + "\n";
}

std::string trace_to_csv(const RunResult& result) {
  std::ostringstream out;
  out.precision(17);
  out << "slot,jobs,on,off,activating,ratio,energy,assignments\n";
  for (const auto& r : result.trace) {
    out << r.slot << ',' << r.num_jobs << ',' << r.num_on << ',' << r.num_off << ','
        << r.num_activating << ',';
    if (std::isinf(r.ratio)) {
      out << "inf";
    } else {
      out << r.ratio;
    }
    out << ',' << r.energy << ',';
    for (std::size_t k = 0; k < r.assignments.size(); ++k) {
      if (k) out << ';';
      out << r.assignments[k].first << ':' << r.assignments[k].second;
    }
    out << '\n';
  }
  return out.str();
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error("write failed for " + path.string());
}

Instance load_instance(const std::filesystem::path& path) {
  return parse_instance(read_text_file(path));
}

OnlineParams load_online_params(const std::filesystem::path& path) {
  return parse_online_params(read_text_file(path));
}

}  // namespace dcpm
