#include "vccsim/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <functional>
#include <limits>
#include <map>

#include <fmt/format.h>

namespace vccsim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

// Value-level failure; the caller attaches key and line.
struct ValueError {
  std::string message;
};

double number(std::string_view raw) {
  const auto v = parse_number(raw);
  if (!v) throw ValueError{"expected a number, got '" + std::string(raw) + "'"};
  return *v;
}

struct Bounds {
  double lo = -kInf;
  double hi = kInf;
  bool lo_open = false;
  bool hi_open = false;
};

constexpr Bounds kNonNegative{0.0, kInf, false, false};
constexpr Bounds kPositive{0.0, kInf, true, false};
constexpr Bounds kProbability{0.0, 1.0, false, false};

double bounded(std::string_view raw, Bounds b) {
  const double v = number(raw);
  const bool below = b.lo_open ? !(v > b.lo) : !(v >= b.lo);
  const bool above = b.hi_open ? !(v < b.hi) : !(v <= b.hi);
  if (below || above) {
    const std::string lo = b.lo_open ? "(" : "[";
    const std::string hi = b.hi_open ? ")" : "]";
    throw ValueError{fmt::format("value {} out of range {}{}, {}{}", raw, lo, b.lo, b.hi, hi)};
  }
  return v;
}

std::uint64_t integer(std::string_view raw) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), v);
  if (ec != std::errc{} || ptr != raw.data() + raw.size())
    throw ValueError{"expected a non-negative integer, got '" + std::string(raw) + "'"};
  return v;
}

bool boolean(std::string_view raw) {
  const std::string v = lower(raw);
  if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
  if (v == "false" || v == "no" || v == "off" || v == "0") return false;
  throw ValueError{"expected true or false, got '" + std::string(raw) + "'"};
}

template <typename Item, typename ParseItem>
std::vector<Item> list(std::string_view raw, ParseItem parse_item) {
  std::vector<Item> out;
  while (true) {
    const auto comma = raw.find(',');
    const std::string_view item = trim(raw.substr(0, comma));
    if (item.empty()) throw ValueError{"empty list element"};
    out.push_back(parse_item(item));
    if (comma == std::string_view::npos) break;
    raw.remove_prefix(comma + 1);
  }
  return out;
}

std::string fmt_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{}", v);
}

template <typename T>
std::string fmt_list(const std::vector<T>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    if constexpr (std::is_floating_point_v<T>)
      out += fmt_number(values[i]);
    else
      out += fmt::format("{}", values[i]);
  }
  return out;
}

std::string fmt_bool(bool v) { return v ? "true" : "false"; }

// Parse-time state that does not live in Config itself.
struct Pending {
  std::optional<std::size_t> replications;
  bool seeds_given = false;
  bool axis_given = false;
  bool values_given = false;
};

struct KeySpec {
  std::string name;
  std::function<void(Config&, Pending&, std::string_view)> apply;
  // Empty optional: omit the key when serializing.
  std::function<std::optional<std::string>(const Config&)> print;
};

SweepSpec& sweep_of(Config& c) {
  if (!c.sweep) c.sweep.emplace();
  return *c.sweep;
}

template <typename Get>
KeySpec num_key(std::string name, Bounds bounds, Get get) {
  return {std::move(name), [get, bounds](Config& c, Pending&, std::string_view v) { get(c) = bounded(v, bounds); },
          [get](const Config& c) -> std::optional<std::string> { return fmt_number(get(c)); }};
}

template <typename Get>
KeySpec count_key(std::string name, Get get) {
  return {std::move(name), [get](Config& c, Pending&, std::string_view v) { get(c) = static_cast<std::size_t>(integer(v)); },
          [get](const Config& c) -> std::optional<std::string> { return fmt::format("{}", get(c)); }};
}

template <typename Get>
KeySpec bool_key(std::string name, Get get) {
  return {std::move(name), [get](Config& c, Pending&, std::string_view v) { get(c) = boolean(v); },
          [get](const Config& c) -> std::optional<std::string> { return fmt_bool(get(c)); }};
}

template <typename Get>
KeySpec list_key(std::string name, Bounds bounds, Get get) {
  return {std::move(name),
          [get, bounds](Config& c, Pending&, std::string_view v) {
            get(c) = list<double>(v, [bounds](std::string_view item) { return bounded(item, bounds); });
          },
          [get](const Config& c) -> std::optional<std::string> { return fmt_list(get(c)); }};
}

const std::vector<KeySpec>& key_table() {
  static const std::vector<KeySpec> table = [] {
    std::vector<KeySpec> t;
    // Presets come first: they reset whole sections, explicit keys then override.
    t.push_back({"scenario.preset",
                 [](Config& c, Pending&, std::string_view v) {
                   try {
                     c.run.geometry = geometry_preset(std::string(v));
                   } catch (const std::invalid_argument& e) {
                     throw ValueError{e.what()};
                   }
                   c.run.scenario_preset = std::string(v);
                 },
                 [](const Config& c) -> std::optional<std::string> { return c.run.scenario_preset; }});
    t.push_back({"channel.preset",
                 [](Config& c, Pending&, std::string_view v) {
                   try {
                     c.run.channel = channel_preset(std::string(v));
                   } catch (const std::invalid_argument& e) {
                     throw ValueError{e.what()};
                   }
                   c.run.channel_preset = std::string(v);
                 },
                 [](const Config& c) -> std::optional<std::string> { return c.run.channel_preset; }});

    t.push_back({"strategy",
                 [](Config& c, Pending&, std::string_view v) {
                   const auto s = parse_strategy_name(v);
                   if (!s) throw ValueError{"expected ec_first or vcc_first, got '" + std::string(v) + "'"};
                   c.strategy = *s;
                 },
                 [](const Config& c) -> std::optional<std::string> {
                   if (!c.strategy) return std::nullopt;
                   return std::string(strategy_name(*c.strategy));
                 }});
    t.push_back(count_key("users", [](auto& c) -> auto& { return c.run.n_users; }));
    t.push_back(num_key("request_rate", kPositive, [](auto& c) -> auto& { return c.run.request_rate; }));
    t.push_back(num_key("duration", kPositive, [](auto& c) -> auto& { return c.run.duration; }));
    t.push_back({"seed", [](Config& c, Pending&, std::string_view v) { c.run.seed = integer(v); },
                 [](const Config& c) -> std::optional<std::string> { return fmt::format("{}", c.run.seed); }});

    t.push_back(num_key("task.workload", kNonNegative, [](auto& c) -> auto& { return c.run.task.workload; }));
    t.push_back(num_key("task.size", kNonNegative, [](auto& c) -> auto& { return c.run.task.size; }));
    t.push_back(num_key("task.result_size", kNonNegative, [](auto& c) -> auto& { return c.run.task.result_size; }));

    t.push_back(num_key("scenario.length", kPositive, [](auto& c) -> auto& { return c.run.geometry.loop_length_x; }));
    t.push_back(num_key("scenario.width", kPositive, [](auto& c) -> auto& { return c.run.geometry.loop_width_y; }));
    t.push_back(num_key("scenario.bs_x", Bounds{}, [](auto& c) -> auto& { return c.run.geometry.bs_position.x; }));
    t.push_back(num_key("scenario.bs_y", Bounds{}, [](auto& c) -> auto& { return c.run.geometry.bs_position.y; }));
    t.push_back(num_key("scenario.bs_z", kPositive, [](auto& c) -> auto& { return c.run.geometry.bs_position.z; }));
    t.push_back(num_key("scenario.coverage_radius", kPositive,
                        [](auto& c) -> auto& { return c.run.geometry.coverage_radius; }));
    t.push_back(num_key("scenario.ue_height", kNonNegative, [](auto& c) -> auto& { return c.run.geometry.ue_height; }));
    t.push_back(count_key("scenario.vehicles", [](auto& c) -> auto& { return c.run.n_vehicles; }));
    t.push_back(num_key("scenario.speed_kmh", kNonNegative, [](auto& c) -> auto& { return c.run.vehicle_speed_kmh; }));

    t.push_back(num_key("compute.cloud_capacity", kPositive, [](auto& c) -> auto& { return c.run.compute.cloud_capacity; }));
    t.push_back(num_key("compute.edge_capacity", kPositive, [](auto& c) -> auto& { return c.run.compute.edge_capacity; }));
    t.push_back(count_key("compute.edge_max_queue", [](auto& c) -> auto& { return c.run.compute.edge_max_queue; }));
    t.push_back(num_key("compute.vehicle_capacity", kPositive,
                        [](auto& c) -> auto& { return c.run.compute.vehicle_capacity; }));
    t.push_back(num_key("compute.vehicle_capacity_fraction", kPositive,
                        [](auto& c) -> auto& { return c.run.vehicle_capacity_fraction; }));

    t.push_back(num_key("controller.beacon_period", kPositive,
                        [](auto& c) -> auto& { return c.run.controller.beacon_period; }));
    t.push_back(num_key("controller.timeout", kPositive, [](auto& c) -> auto& { return c.run.controller.timeout; }));
    t.push_back(bool_key("controller.beacon_on_coverage_entry",
                         [](auto& c) -> auto& { return c.run.controller.beacon_on_coverage_entry; }));

    t.push_back({"channel.sharing",
                 [](Config& c, Pending&, std::string_view v) {
                   if (v == "processor_sharing")
                     c.run.channel.sharing = Sharing::kProcessorSharing;
                   else if (v == "none")
                     c.run.channel.sharing = Sharing::kNone;
                   else
                     throw ValueError{"expected processor_sharing or none, got '" + std::string(v) + "'"};
                 },
                 [](const Config& c) -> std::optional<std::string> {
                   return c.run.channel.sharing == Sharing::kProcessorSharing ? "processor_sharing" : "none";
                 }});
    t.push_back(num_key("channel.beacon_bytes", kNonNegative, [](auto& c) -> auto& { return c.run.channel.beacon_bytes; }));
    for (LinkClass link : kAllLinkClasses) {
      const std::string prefix = "channel." + std::string(link_name(link)) + ".";
      t.push_back(num_key(prefix + "latency", kNonNegative,
                          [link](auto& c) -> auto& { return c.run.channel[link].base_latency; }));
      t.push_back(num_key(prefix + "rate", kPositive, [link](auto& c) -> auto& { return c.run.channel[link].rate; }));
      t.push_back(num_key(prefix + "p_base", kProbability,
                          [link](auto& c) -> auto& { return c.run.channel[link].p_base; }));
      t.push_back(num_key(prefix + "k_speed", kNonNegative,
                          [link](auto& c) -> auto& { return c.run.channel[link].k_speed; }));
    }

    t.push_back({"sweep.axis",
                 [](Config& c, Pending& p, std::string_view v) {
                   const auto axis = parse_axis_name(v);
                   if (!axis) throw ValueError{"unknown sweep axis '" + std::string(v) + "'"};
                   sweep_of(c).axis = *axis;
                   p.axis_given = true;
                 },
                 [](const Config& c) -> std::optional<std::string> {
                   if (!c.sweep) return std::nullopt;
                   return std::string(axis_name(c.sweep->axis));
                 }});
    t.push_back({"sweep.values",
                 [](Config& c, Pending& p, std::string_view v) {
                   sweep_of(c).values = list<double>(v, [](std::string_view item) { return number(item); });
                   p.values_given = true;
                 },
                 [](const Config& c) -> std::optional<std::string> {
                   if (!c.sweep) return std::nullopt;
                   return fmt_list(c.sweep->values);
                 }});
    t.push_back({"sweep.seeds",
                 [](Config& c, Pending& p, std::string_view v) {
                   sweep_of(c).seeds = list<std::uint64_t>(v, [](std::string_view item) { return integer(item); });
                   p.seeds_given = true;
                 },
                 [](const Config& c) -> std::optional<std::string> {
                   if (!c.sweep) return std::nullopt;
                   return fmt_list(c.sweep->seeds);
                 }});
    t.push_back({"sweep.replications",
                 [](Config& c, Pending& p, std::string_view v) {
                   const auto n = integer(v);
                   if (n == 0) throw ValueError{"replications must be at least 1"};
                   sweep_of(c);
                   p.replications = static_cast<std::size_t>(n);
                 },
                 [](const Config& c) -> std::optional<std::string> {
                   if (!c.sweep) return std::nullopt;
                   return fmt::format("{}", c.sweep->replications());
                 }});

    t.push_back(num_key("cost.c_ec_cpu", kNonNegative, [](auto& c) -> auto& { return c.cost.c_ec_cpu; }));
    t.push_back(num_key("cost.lifespan", kPositive, [](auto& c) -> auto& { return c.cost.lifespan; }));
    t.push_back(num_key("cost.years", kPositive, [](auto& c) -> auto& { return c.cost.years; }));
    t.push_back(num_key("cost.c_ec_main", kNonNegative, [](auto& c) -> auto& { return c.cost.c_ec_main; }));
    t.push_back(num_key("cost.c_ec_req", kNonNegative, [](auto& c) -> auto& { return c.cost.c_ec_req; }));
    t.push_back({"cost.c_vcc_req", [](Config& c, Pending&, std::string_view v) { c.cost.c_vcc_req = bounded(v, kNonNegative); },
                 [](const Config& c) -> std::optional<std::string> {
                   if (!c.cost.c_vcc_req) return std::nullopt;
                   return fmt_number(*c.cost.c_vcc_req);
                 }});
    t.push_back(num_key("cost.rate", kNonNegative, [](auto& c) -> auto& { return c.cost.rate; }));
    t.push_back(num_key("cost.users", kNonNegative, [](auto& c) -> auto& { return c.cost.users; }));
    t.push_back(num_key("cost.alpha", kNonNegative, [](auto& c) -> auto& { return c.cost.alpha; }));
    t.push_back(num_key("cost.beta", kNonNegative, [](auto& c) -> auto& { return c.cost.beta; }));
    t.push_back(bool_key("cost.table_interpretation", [](auto& c) -> auto& { return c.cost.table_interpretation; }));
    t.push_back(num_key("cost.capex_overhead", Bounds{1.0, kInf, false, false},
                        [](auto& c) -> auto& { return c.cost.capex_overhead; }));

    t.push_back(list_key("report.betas", kNonNegative, [](auto& c) -> auto& { return c.report.betas; }));
    t.push_back(list_key("report.years", kPositive, [](auto& c) -> auto& { return c.report.years; }));
    t.push_back(list_key("report.scales", kPositive, [](auto& c) -> auto& { return c.report.scales; }));
    return t;
  }();
  return table;
}

const KeySpec* find_key(std::string_view name) {
  for (const KeySpec& spec : key_table())
    if (spec.name == name) return &spec;
  return nullptr;
}

}  // namespace

ConfigError::ConfigError(std::string key, std::size_t line, const std::string& message)
    : std::runtime_error(line > 0 ? fmt::format("line {}: {}: {}", line, key, message)
                                  : (key.empty() ? message : fmt::format("{}: {}", key, message))),
      key_(std::move(key)),
      line_(line) {}

std::string_view axis_name(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kUsers: return "users";
    case SweepAxis::kWorkload: return "workload";
    case SweepAxis::kVehicles: return "vehicles";
    case SweepAxis::kVehicleCapacityFraction: return "vehicle_capacity_fraction";
    case SweepAxis::kSpeed: return "speed";
    case SweepAxis::kBeta: return "beta";
  }
  return "unknown";
}

std::optional<SweepAxis> parse_axis_name(std::string_view name) {
  for (SweepAxis axis : {SweepAxis::kUsers, SweepAxis::kWorkload, SweepAxis::kVehicles,
                         SweepAxis::kVehicleCapacityFraction, SweepAxis::kSpeed, SweepAxis::kBeta})
    if (axis_name(axis) == name) return axis;
  return std::nullopt;
}

std::string_view strategy_name(Strategy strategy) {
  return strategy == Strategy::kEcFirst ? "ec_first" : "vcc_first";
}

std::optional<Strategy> parse_strategy_name(std::string_view name) {
  std::string key = lower(name);
  key.erase(std::remove(key.begin(), key.end(), '_'), key.end());
  if (key == "ecfirst") return Strategy::kEcFirst;
  if (key == "vccfirst") return Strategy::kVccFirst;
  return std::nullopt;
}

std::optional<double> parse_number(std::string_view text) {
  text = trim(text);
  if (text.empty()) return std::nullopt;
  const std::string l = lower(text);
  if (l == "inf" || l == "infinity" || l == "unbounded") return kInf;

  auto plain = [](std::string_view s) -> std::optional<double> {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
    return v;
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return plain(text);
  const auto num = plain(text.substr(0, slash));
  const auto den = plain(text.substr(slash + 1));
  if (!num || !den || *den == 0.0) return std::nullopt;
  return *num / *den;
}

RunConfig Config::run_config() const {
  if (!strategy) throw ConfigError("strategy", 0, "missing mandatory key (ec_first or vcc_first)");
  RunConfig cfg = run;
  cfg.strategy = *strategy;
  return cfg;
}

SweepSpec Config::sweep_spec() const {
  if (!sweep) throw ConfigError("sweep.axis", 0, "no sweep configured");
  return *sweep;
}

Config parse_config(std::string_view text) {
  struct Entry {
    const KeySpec* spec;
    std::string key;
    std::string value;
    std::size_t line;
  };
  std::vector<Entry> entries;
  std::map<std::string, std::size_t> seen;

  std::size_t line_no = 0;
  for (std::size_t pos = 0; pos <= text.size();) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(std::string(line), line_no, "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    const KeySpec* spec = find_key(key);
    if (!spec) throw ConfigError(key, line_no, "unknown key");
    if (auto it = seen.find(key); it != seen.end())
      throw ConfigError(key, line_no, fmt::format("duplicate key (first set on line {})", it->second));
    if (value.empty()) throw ConfigError(key, line_no, "missing value");
    seen.emplace(key, line_no);
    entries.push_back({spec, key, value, line_no});
  }

  // Presets before everything else, then file order.
  std::stable_partition(entries.begin(), entries.end(), [](const Entry& e) {
    return e.key == "scenario.preset" || e.key == "channel.preset";
  });

  Config config;
  Pending pending;
  for (const Entry& e : entries) {
    try {
      e.spec->apply(config, pending, e.value);
    } catch (const ValueError& err) {
      throw ConfigError(e.key, e.line, err.message);
    }
  }

  if (config.sweep) {
    auto line_of = [&](const char* key) { return seen.count(key) ? seen.at(key) : std::size_t{0}; };
    if (!pending.axis_given) throw ConfigError("sweep.axis", 0, "missing (required when any sweep key is set)");
    if (!pending.values_given) throw ConfigError("sweep.values", 0, "missing (required when any sweep key is set)");
    if (pending.replications) {
      const std::size_t n = *pending.replications;
      if (pending.seeds_given) {
        if (config.sweep->seeds.size() != n)
          throw ConfigError("sweep.replications", line_of("sweep.replications"),
                            fmt::format("{} replications but {} seeds listed", n, config.sweep->seeds.size()));
      } else {
        std::vector<std::uint64_t> seeds(kDefaultSeeds.begin(), kDefaultSeeds.begin() + std::min(n, kDefaultSeeds.size()));
        for (std::uint64_t s = kDefaultSeeds.back() + 1; seeds.size() < n; ++s) seeds.push_back(s);
        config.sweep->seeds = std::move(seeds);
      }
    }
    if (config.sweep->seeds.empty()) throw ConfigError("sweep.seeds", line_of("sweep.seeds"), "at least one seed required");
  }

  try {
    validate(config.run.geometry);
    validate(config.run.channel);
    validate(config.run.compute);
    validate(config.run.controller);
    validate(config.cost);
  } catch (const std::invalid_argument& err) {
    throw ConfigError("", 0, std::string("invalid configuration: ") + err.what());
  }
  return config;
}

std::string serialize(const Config& config) {
  std::string out;
  for (const KeySpec& spec : key_table()) {
    if (auto value = spec.print(config)) out += fmt::format("{} = {}\n", spec.name, *value);
  }
  return out;
}

}  // namespace vccsim
