#pragma once

// An independently written brute-force simulator for micro scenarios
// (deterministic distributions, no failures, fractional thresholds of 0 or
// 1). It shares no code with the engine: flat structs, linear-scan event
// selection, its own BFS routing. Used to check the engine's event log
// event-for-event.

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "fogsim/results.hpp"

namespace fogsim::testing {

struct MicroWorld {
  struct Link {
    int a, b;
    double bw, pr;
  };
  struct Msg {
    std::string name, src_module, dst_module;
    double instructions, bytes;
  };
  struct Rule {
    std::string module, in, out;
    bool absorb = false;
    double threshold = 1.0;  // 0 or 1 only
  };
  struct Deploy {
    enum Kind { Module, Sink, Source } kind;
    std::string what;  // module name, or source message name
    int node = 0;
    double period = 0;  // sources
  };

  std::string app_name;
  std::map<int, double> node_ipt;
  std::vector<Link> links;
  std::map<std::string, Msg> messages;
  std::vector<Rule> rules;
  std::vector<Deploy> deploys;  // in engine deployment order
  double until = 0;
};

struct MicroLog {
  std::vector<ComputeRecord> compute;
  std::vector<LinkRecord> link;
};

inline MicroLog run_micro(const MicroWorld& world) {
  struct Packet {
    long long id = 0;
    std::string type;
    int src_des = -1, dst_des = -1;
    std::vector<int> path;
    std::size_t hop = 0;
    double emit = 0, reception = 0, in = 0;
    bool raw = false;
    long long sampled = 0;
  };
  using Pkt = std::shared_ptr<Packet>;

  struct Ev {
    double t = 0;
    std::uint64_t seq = 0;
    int kind = 0;  // 0 source tick, 1 kick, 2 arrival, 3 complete
    int des = -1;
    std::pair<int, int> chan{};
    Pkt pkt;
    bool dead = false;
  };

  struct Proc {
    MicroWorld::Deploy spec;
    int des;
    std::deque<Pkt> queue;
    bool busy = false;
  };

  struct Chan {
    double bw = 1, pr = 0;
    std::deque<Pkt> queue;
    bool busy = false;
  };

  // adjacency, sorted neighbor ids
  std::map<int, std::vector<int>> adj;
  for (const auto& [id, _] : world.node_ipt) adj[id] = {};
  std::map<std::pair<int, int>, Chan> chans;
  for (const auto& l : world.links) {
    adj[l.a].push_back(l.b);
    adj[l.b].push_back(l.a);
    chans[{l.a, l.b}] = {l.bw, l.pr, {}, false};
    chans[{l.b, l.a}] = {l.bw, l.pr, {}, false};
  }
  for (auto& [_, v] : adj) std::sort(v.begin(), v.end());

  auto bfs_from = [&](int src) {
    std::map<int, int> dist{{src, 0}};
    std::deque<int> frontier{src};
    while (!frontier.empty()) {
      int cur = frontier.front();
      frontier.pop_front();
      for (int nb : adj.at(cur))
        if (!dist.count(nb)) {
          dist[nb] = dist.at(cur) + 1;
          frontier.push_back(nb);
        }
    }
    return dist;
  };
  // lexicographically smallest shortest path via min-id descent toward dst
  auto lex_path = [&](int src, int dst) {
    std::vector<int> path{src};
    if (src == dst) return path;
    const auto dist = bfs_from(dst);
    int cur = src;
    int left = dist.at(src);
    while (cur != dst) {
      for (int nb : adj.at(cur)) {
        auto it = dist.find(nb);
        if (it != dist.end() && it->second == left - 1) {
          cur = nb;
          break;
        }
      }
      --left;
      path.push_back(cur);
    }
    return path;
  };

  std::vector<Proc> procs;
  std::map<std::string, std::vector<int>> replicas;  // module -> des ids (ascending)
  for (const auto& d : world.deploys) {
    const int des = static_cast<int>(procs.size());
    procs.push_back({d, des, {}, false});
    if (d.kind != MicroWorld::Deploy::Source) replicas[d.what].push_back(des);
  }

  std::vector<Ev> events;
  std::uint64_t seq = 0;
  auto push = [&](double t, int kind, int des, std::pair<int, int> chan, Pkt pkt) {
    events.push_back({t, ++seq, kind, des, chan, std::move(pkt), false});
  };
  for (const auto& p : procs)
    if (p.spec.kind == MicroWorld::Deploy::Source) push(p.spec.period, 0, p.des, {}, nullptr);

  MicroLog log;
  long long next_id = 1;
  long long gauge = 0;
  double now = 0;

  auto start_link = [&](std::pair<int, int> key) {
    Chan& ch = chans.at(key);
    Pkt pkt = ch.queue.front();
    ch.queue.pop_front();
    --gauge;
    const double latency = world.messages.at(pkt->type).bytes / ch.bw + ch.pr;
    log.link.push_back({pkt->id, key.first, key.second, world.app_name, latency, pkt->type, now,
                        world.messages.at(pkt->type).bytes, pkt->sampled});
    ch.busy = true;
    push(now + latency, 2, -1, key, pkt);
  };

  auto enqueue = [&](const Pkt& pkt) {
    const std::pair<int, int> key{pkt->path[pkt->hop], pkt->path[pkt->hop + 1]};
    pkt->sampled = gauge;
    ++gauge;
    chans.at(key).queue.push_back(pkt);
    push(now, 1, -1, key, nullptr);
  };

  auto start_service = [&](Proc& proc, const Pkt& pkt) {
    pkt->in = now;
    const double svc = proc.spec.kind == MicroWorld::Deploy::Sink
                           ? 0.0
                           : world.messages.at(pkt->type).instructions /
                                 world.node_ipt.at(proc.spec.node);
    proc.busy = true;
    push(now + svc, 3, proc.des, {}, pkt);
  };

  auto deliver = [&](const Pkt& pkt) {
    Proc& proc = procs[static_cast<std::size_t>(pkt->dst_des)];
    pkt->reception = now;
    if (proc.busy) {
      proc.queue.push_back(pkt);
    } else {
      start_service(proc, pkt);
    }
  };

  std::function<void(const std::string&, long long, int, int, bool)> emit =
      [&](const std::string& type, long long id, int src_des, int from, bool raw) {
        const auto& mt = world.messages.at(type);
        // nearest replica: min (hop distance, node id, des id)
        const auto dist = bfs_from(from);
        int best_des = -1, best_node = 0, best_d = 0;
        for (int des : replicas.at(mt.dst_module)) {
          const int node = procs[static_cast<std::size_t>(des)].spec.node;
          auto it = dist.find(node);
          if (it == dist.end()) continue;
          if (best_des < 0 || it->second < best_d ||
              (it->second == best_d && node < best_node)) {
            best_des = des;
            best_node = node;
            best_d = it->second;
          }
        }
        if (best_des < 0) return;
        auto pkt = std::make_shared<Packet>();
        pkt->id = id;
        pkt->type = type;
        pkt->src_des = src_des;
        pkt->dst_des = best_des;
        pkt->path = lex_path(from, best_node);
        pkt->emit = now;
        pkt->raw = raw;
        if (pkt->path.size() == 1) {
          deliver(pkt);
        } else {
          enqueue(pkt);
        }
      };

  while (true) {
    // brute-force minimum scan over the pending event list
    std::size_t best = events.size();
    for (std::size_t i = 0; i < events.size(); ++i) {
      if (events[i].dead) continue;
      if (best == events.size() || events[i].t < events[best].t ||
          (events[i].t == events[best].t && events[i].seq < events[best].seq))
        best = i;
    }
    if (best == events.size() || events[best].t > world.until) break;
    Ev ev = events[best];
    events[best].dead = true;
    now = ev.t;

    switch (ev.kind) {
      case 0: {  // source tick
        Proc& proc = procs[static_cast<std::size_t>(ev.des)];
        emit(proc.spec.what, next_id++, proc.des, proc.spec.node, true);
        push(now + proc.spec.period, 0, proc.des, {}, nullptr);
        break;
      }
      case 1: {  // channel kick
        Chan& ch = chans.at(ev.chan);
        if (!ch.busy && !ch.queue.empty()) start_link(ev.chan);
        break;
      }
      case 2: {  // link arrival
        Chan& ch = chans.at(ev.chan);
        ch.busy = false;
        if (!ch.queue.empty()) start_link(ev.chan);
        ++ev.pkt->hop;
        if (ev.pkt->hop + 1 == ev.pkt->path.size()) {
          deliver(ev.pkt);
        } else {
          enqueue(ev.pkt);
        }
        break;
      }
      case 3: {  // serve complete
        Proc& proc = procs[static_cast<std::size_t>(ev.des)];
        const Pkt& pkt = ev.pkt;
        const bool sink = proc.spec.kind == MicroWorld::Deploy::Sink;
        ComputeRecord rec;
        rec.id = pkt->id;
        rec.type = sink ? "SINK_M" : "COMP_M";
        rec.app = world.app_name;
        rec.module = proc.spec.what;
        rec.message = pkt->type;
        rec.des_src = pkt->src_des;
        rec.des_dst = proc.des;
        rec.topo_src = pkt->path.front();
        rec.topo_dst = proc.spec.node;
        rec.module_src = world.messages.at(pkt->type).src_module;
        if (!(sink && pkt->raw)) rec.service = now - pkt->in;
        rec.time_in = pkt->in;
        rec.time_out = now;
        rec.time_emit = pkt->emit;
        rec.time_reception = pkt->reception;
        log.compute.push_back(rec);
        proc.busy = false;
        if (!proc.queue.empty()) {
          Pkt nxt = proc.queue.front();
          proc.queue.pop_front();
          start_service(proc, nxt);
        }
        if (!sink) {
          for (const auto& rule : world.rules) {
            if (rule.module != proc.spec.what || rule.in != pkt->type) continue;
            if (rule.absorb || rule.threshold <= 0) continue;
            emit(rule.out, pkt->id, proc.des, proc.spec.node, false);
          }
        }
        break;
      }
    }
  }
  return log;
}

}  // namespace fogsim::testing
