#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fogsim/distributions.hpp"

namespace fogsim {

enum class ModuleKind { Source, Sink, Module };

struct AppModule {
  std::string name;
  ModuleKind kind = ModuleKind::Module;
  double ram = 0;
};

struct MessageType {
  std::string name;
  std::string src_module;
  std::string dst_module;
  double instructions = 0;
  double bytes = 0;
  bool broadcast = false;
};

/// How a module reacts to an incoming message. Fractional rules emit the
/// output with probability equal to the threshold; broadcast rules emit one
/// copy per deployed replica of the destination module (fan-out resolved by
/// the engine); absorb rules consume the message without output.
struct TransmissionRule {
  enum class Mode { Fractional, Broadcast, Absorb };
  std::string module;
  std::string message_in;
  std::optional<std::string> message_out;
  Mode mode = Mode::Fractional;
  double threshold = 1.0;  // only meaningful for Fractional
};

/// Periodic message generation inside a deployed module (every replica emits
/// independently on its own schedule).
struct ServiceSourceRule {
  std::string module;
  TemporalDistribution distribution;
  std::string message_out;
};

struct Application {
  std::string name;
  std::vector<AppModule> modules;
  std::map<std::string, MessageType> messages;
  std::vector<TransmissionRule> rules;
  std::vector<ServiceSourceRule> service_sources;
  std::vector<std::string> source_messages;  // injectable by workload sources

  const AppModule* find_module(const std::string& name) const;
  const MessageType* find_message(const std::string& name) const;
  /// Rules registered for (module, message_in), in declaration order.
  std::vector<const TransmissionRule*> rules_for(const std::string& module,
                                                 const std::string& message_in) const;
};

/// Checks every application invariant: name resolution, kind constraints
/// (sources never receive, sinks never emit), thresholds within [0,1], and
/// acyclicity of the transformation chains over (module, message) pairs.
/// Self-messages via ServiceSourceRule are exempt from the cycle check.
/// Throws std::runtime_error with a diagnostic naming the offender.
void validate(const Application& app);

/// Message names emitted when `module` finishes serving `message_in`.
/// Fractional rules fire iff a fresh uniform draw is < threshold; broadcast
/// rules always fire (once; the engine fans out per replica); absorb rules
/// emit nothing. Throws when no rule is registered for the pair.
std::vector<std::string> transmissions_for(const Application& app, const std::string& module,
                                           const std::string& message_in, RandomStream& rng);

/// Parses the JSON application document (see README for the schema).
Application load_application(const std::string& json_text);

}  // namespace fogsim
