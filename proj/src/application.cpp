#include "fogsim/application.hpp"

#include <functional>
#include <set>
#include <stdexcept>

#include "json_support.hpp"

namespace fogsim {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::runtime_error(msg); }

}  // namespace

const AppModule* Application::find_module(const std::string& name) const {
  for (const auto& m : modules)
    if (m.name == name) return &m;
  return nullptr;
}

const MessageType* Application::find_message(const std::string& name) const {
  auto it = messages.find(name);
  return it == messages.end() ? nullptr : &it->second;
}

std::vector<const TransmissionRule*> Application::rules_for(const std::string& module,
                                                            const std::string& message_in) const {
  std::vector<const TransmissionRule*> out;
  for (const auto& r : rules)
    if (r.module == module && r.message_in == message_in) out.push_back(&r);
  return out;
}

void validate(const Application& app) {
  const std::string ctx = "application " + app.name;
  if (app.name.empty()) fail("application: name must not be empty");

  std::set<std::string> module_names;
  for (const auto& m : app.modules) {
    if (!module_names.insert(m.name).second) fail(ctx + ": duplicate module name " + m.name);
  }

  for (const auto& [name, msg] : app.messages) {
    if (msg.name != name) fail(ctx + ": message map key does not match message name " + msg.name);
    const AppModule* src = app.find_module(msg.src_module);
    const AppModule* dst = app.find_module(msg.dst_module);
    if (!src) fail(ctx + ": message " + name + " references unknown source module " + msg.src_module);
    if (!dst) fail(ctx + ": message " + name + " references unknown destination module " + msg.dst_module);
    if (src->kind == ModuleKind::Sink)
      fail(ctx + ": SINK module " + src->name + " emits message " + name);
    if (dst->kind == ModuleKind::Source)
      fail(ctx + ": SOURCE module " + dst->name + " receives message " + name);
    if (!(msg.bytes > 0)) fail(ctx + ": message " + name + " must have bytes > 0");
    if (dst->kind == ModuleKind::Module && !(msg.instructions > 0))
      fail(ctx + ": message " + name + " consumed by compute module " + dst->name +
           " must have instructions > 0");
  }

  for (const auto& name : app.source_messages) {
    if (!app.find_message(name)) fail(ctx + ": unknown source message " + name);
  }

  for (const auto& r : app.rules) {
    const AppModule* mod = app.find_module(r.module);
    if (!mod) fail(ctx + ": rule references unknown module " + r.module);
    const MessageType* in = app.find_message(r.message_in);
    if (!in) fail(ctx + ": rule on " + r.module + " references unknown message " + r.message_in);
    if (in->dst_module != r.module)
      fail(ctx + ": rule on " + r.module + " consumes " + r.message_in + " addressed to " +
           in->dst_module);
    if (r.mode == TransmissionRule::Mode::Absorb) {
      if (r.message_out) fail(ctx + ": absorb rule on " + r.module + " must not name message_out");
      continue;
    }
    if (!r.message_out)
      fail(ctx + ": rule on " + r.module + " for " + r.message_in + " is missing message_out");
    const MessageType* out = app.find_message(*r.message_out);
    if (!out) fail(ctx + ": rule on " + r.module + " references unknown message " + *r.message_out);
    if (out->src_module != r.module)
      fail(ctx + ": rule on " + r.module + " emits " + *r.message_out + " declared from " +
           out->src_module);
    if (out->dst_module == r.module)
      fail(ctx + ": cycle: rule on " + r.module + " emits " + *r.message_out +
           " back to the same module (self-messages are only allowed via service sources)");
    if (r.mode == TransmissionRule::Mode::Fractional && (r.threshold < 0 || r.threshold > 1))
      fail(ctx + ": fractional threshold " + std::to_string(r.threshold) + " on " + r.module +
           " is outside [0,1]");
    if (r.mode == TransmissionRule::Mode::Broadcast && !out->broadcast)
      fail(ctx + ": broadcast rule on " + r.module + " emits non-broadcast message " + out->name);
  }

  for (const auto& s : app.service_sources) {
    const AppModule* mod = app.find_module(s.module);
    if (!mod) fail(ctx + ": service source references unknown module " + s.module);
    if (mod->kind != ModuleKind::Module)
      fail(ctx + ": service source on " + s.module + " requires a compute module");
    const MessageType* out = app.find_message(s.message_out);
    if (!out) fail(ctx + ": service source on " + s.module + " references unknown message " + s.message_out);
    if (out->src_module != s.module)
      fail(ctx + ": service source on " + s.module + " emits " + s.message_out + " declared from " +
           out->src_module);
    s.distribution.validate();
  }

  // every message that can land on a plain compute module must have a rule,
  // otherwise it would be unroutable at run time
  for (const auto& [name, msg] : app.messages) {
    const AppModule* dst = app.find_module(msg.dst_module);
    if (dst->kind == ModuleKind::Module && app.rules_for(dst->name, name).empty())
      fail(ctx + ": message " + name + " arrives at compute module " + dst->name +
           " which has no transmission rule for it");
  }

  // acyclicity of the transformation chains: nodes are (module, message)
  // pairs, edges follow rules to (dst(message_out), message_out)
  using ChainNode = std::pair<std::string, std::string>;
  std::map<ChainNode, std::vector<ChainNode>> edges;
  for (const auto& r : app.rules) {
    if (!r.message_out) continue;
    const MessageType* out = app.find_message(*r.message_out);
    edges[{r.module, r.message_in}].push_back({out->dst_module, out->name});
  }
  std::map<ChainNode, int> state;  // 0 unseen, 1 in progress, 2 done
  std::function<void(const ChainNode&)> visit = [&](const ChainNode& n) {
    int& s = state[n];
    if (s == 2) return;
    if (s == 1)
      fail(ctx + ": cycle through module " + n.first + " on message " + n.second);
    s = 1;
    auto it = edges.find(n);
    if (it != edges.end())
      for (const auto& next : it->second) visit(next);
    s = 2;
  };
  for (const auto& [n, _] : edges) visit(n);
}

std::vector<std::string> transmissions_for(const Application& app, const std::string& module,
                                           const std::string& message_in, RandomStream& rng) {
  const auto rules = app.rules_for(module, message_in);
  if (rules.empty())
    fail("application " + app.name + ": unroutable message " + message_in + " at module " + module);
  std::vector<std::string> out;
  for (const TransmissionRule* r : rules) {
    switch (r->mode) {
      case TransmissionRule::Mode::Fractional:
        if (rng.uniform01() < r->threshold) out.push_back(*r->message_out);
        break;
      case TransmissionRule::Mode::Broadcast:
        out.push_back(*r->message_out);
        break;
      case TransmissionRule::Mode::Absorb:
        break;
    }
  }
  return out;
}

namespace {

using nlohmann::json;

ModuleKind kind_from_string(const std::string& s, const std::string& where) {
  if (s == "SOURCE") return ModuleKind::Source;
  if (s == "SINK") return ModuleKind::Sink;
  if (s == "MODULE") return ModuleKind::Module;
  fail(where + ": unknown module type " + s);
}

}  // namespace

TemporalDistribution distribution_from_json_value(const json& d, const std::string& where) {
  if (!d.is_object() || !d.contains("type"))
    fail(where + ": distribution must be an object with a type");
  const std::string type = d.at("type").get<std::string>();
  if (type == "deterministic") {
    if (!d.contains("time")) fail(where + ": deterministic distribution requires time");
    return TemporalDistribution::deterministic(d.at("time").get<double>());
  }
  if (type == "deterministic_start") {
    if (!d.contains("time") || !d.contains("start"))
      fail(where + ": deterministic_start distribution requires start and time");
    return TemporalDistribution::deterministic_start(d.at("start").get<double>(),
                                                     d.at("time").get<double>());
  }
  if (type == "exponential") {
    if (!d.contains("mean")) fail(where + ": exponential distribution requires mean");
    return TemporalDistribution::exponential(d.at("mean").get<double>());
  }
  if (type == "exponential_start") {
    if (!d.contains("mean") || !d.contains("start"))
      fail(where + ": exponential_start distribution requires start and mean");
    return TemporalDistribution::exponential_start(d.at("start").get<double>(),
                                                   d.at("mean").get<double>());
  }
  fail(where + ": unknown distribution type " + type);
}

Application load_application_json(const json& doc) {
  if (!doc.is_object()) fail("application document: root must be an object");
  Application app;
  if (!doc.contains("name") || !doc.at("name").is_string())
    fail("application document: missing name");
  app.name = doc.at("name").get<std::string>();
  const std::string ctx = "application " + app.name;

  if (!doc.contains("module") || !doc.at("module").is_array())
    fail(ctx + ": missing module array");
  std::size_t i = 0;
  for (const auto& m : doc.at("module")) {
    const std::string where = ctx + " /module/" + std::to_string(i++);
    AppModule mod;
    if (!m.contains("name")) fail(where + ": missing name");
    mod.name = m.at("name").get<std::string>();
    if (!m.contains("type")) fail(where + ": missing type");
    mod.kind = kind_from_string(m.at("type").get<std::string>(), where);
    mod.ram = m.value("RAM", 0.0);
    app.modules.push_back(std::move(mod));
  }

  i = 0;
  for (const auto& m : doc.value("message", json::array())) {
    const std::string where = ctx + " /message/" + std::to_string(i++);
    MessageType msg;
    if (!m.contains("name")) fail(where + ": missing name");
    msg.name = m.at("name").get<std::string>();
    if (!m.contains("s") || !m.contains("d")) fail(where + ": missing s/d module names");
    msg.src_module = m.at("s").get<std::string>();
    msg.dst_module = m.at("d").get<std::string>();
    if (!m.contains("instructions") || !m.contains("bytes"))
      fail(where + ": instructions and bytes are mandatory");
    msg.instructions = m.at("instructions").get<double>();
    msg.bytes = m.at("bytes").get<double>();
    msg.broadcast = m.value("broadcast", false);
    if (app.messages.count(msg.name)) fail(where + ": duplicate message name " + msg.name);
    app.messages.emplace(msg.name, std::move(msg));
  }

  i = 0;
  for (const auto& t : doc.value("transmission", json::array())) {
    const std::string where = ctx + " /transmission/" + std::to_string(i++);
    TransmissionRule rule;
    if (!t.contains("module") || !t.contains("message_in"))
      fail(where + ": module and message_in are mandatory");
    rule.module = t.at("module").get<std::string>();
    rule.message_in = t.at("message_in").get<std::string>();
    if (t.contains("message_out") && !t.at("message_out").is_null())
      rule.message_out = t.at("message_out").get<std::string>();
    if (t.contains("broadcast") && t.at("broadcast").get<bool>()) {
      rule.mode = TransmissionRule::Mode::Broadcast;
    } else if (!rule.message_out) {
      rule.mode = TransmissionRule::Mode::Absorb;
    } else {
      rule.mode = TransmissionRule::Mode::Fractional;
      rule.threshold = t.contains("fractional") && !t.at("fractional").is_null()
                           ? t.at("fractional").get<double>()
                           : 1.0;
    }
    app.rules.push_back(std::move(rule));
  }

  i = 0;
  for (const auto& s : doc.value("service_source", json::array())) {
    const std::string where = ctx + " /service_source/" + std::to_string(i++);
    ServiceSourceRule rule;
    if (!s.contains("module") || !s.contains("message_out") || !s.contains("distribution"))
      fail(where + ": module, message_out and distribution are mandatory");
    rule.module = s.at("module").get<std::string>();
    rule.message_out = s.at("message_out").get<std::string>();
    rule.distribution = distribution_from_json_value(s.at("distribution"), where);
    app.service_sources.push_back(std::move(rule));
  }

  for (const auto& s : doc.value("source_message", json::array()))
    app.source_messages.push_back(s.get<std::string>());

  return app;
}

Application load_application(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail(std::string("application document: ") + e.what());
  }
  return load_application_json(doc);
}

}  // namespace fogsim
