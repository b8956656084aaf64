#include "dsp/connectivity.hpp"

#include <algorithm>
#include <deque>

namespace dsp {

namespace {

struct Side {
  std::deque<VertexId> queue;
  std::vector<VertexId> seen_list;
};

}  // namespace

SplitOutcome SearchConnectivity::probe(const NeighborSource& src, VertexId u,
                                       VertexId v) {
  const size_t need = static_cast<size_t>(std::max(u, v)) + 1;
  if (seen_u_.size() < need) {
    seen_u_.resize(need, 0);
    seen_v_.resize(need, 0);
  }
  // Neighbor lists can reference vertices above max(u,v); grow on demand.
  auto ensure = [&](VertexId w) {
    if (static_cast<size_t>(w) >= seen_u_.size()) {
      seen_u_.resize(w + 1, 0);
      seen_v_.resize(w + 1, 0);
    }
  };
  ++epoch_;
  const uint32_t tag = epoch_;

  Side su, sv;
  su.queue.push_back(u);
  su.seen_list.push_back(u);
  seen_u_[u] = tag;
  sv.queue.push_back(v);
  sv.seen_list.push_back(v);
  seen_v_[v] = tag;

  bool connected = false;
  // Expands one vertex of `side`; returns false once the two searches touch.
  auto step = [&](Side& side, std::vector<uint32_t>& mine,
                  std::vector<uint32_t>& theirs) {
    VertexId x = side.queue.front();
    side.queue.pop_front();
    for (VertexId w : src.neighbors(x)) {
      ensure(w);
      if (theirs[w] == tag) {
        connected = true;
        return;
      }
      if (mine[w] != tag) {
        mine[w] = tag;
        side.seen_list.push_back(w);
        side.queue.push_back(w);
      }
    }
  };

  // Lockstep alternation keeps the cost near O(min component size).
  while (!su.queue.empty() && !sv.queue.empty()) {
    step(su, seen_u_, seen_v_);
    if (connected) return {};
    if (su.queue.empty()) break;
    step(sv, seen_v_, seen_u_);
    if (connected) return {};
  }

  Side* done = su.queue.empty() ? &su : &sv;
  Side* open = su.queue.empty() ? &sv : &su;
  auto& open_mine = su.queue.empty() ? seen_v_ : seen_u_;
  auto& open_theirs = su.queue.empty() ? seen_u_ : seen_v_;
  const size_t bound = done->seen_list.size();

  // Run the unfinished side just far enough to compare sizes exactly.
  while (!open->queue.empty() && open->seen_list.size() <= bound) {
    step(*open, open_mine, open_theirs);
    if (connected) return {};
  }

  SplitOutcome out;
  out.split = true;
  const VertexId done_ep = (done == &su) ? u : v;
  const VertexId open_ep = (done == &su) ? v : u;
  if (open->seen_list.size() > bound) {
    out.smaller = done->seen_list;
    out.smaller_endpoint = done_ep;
  } else if (open->seen_list.size() < bound) {
    out.smaller = open->seen_list;
    out.smaller_endpoint = open_ep;
  } else {
    // Equal sizes: take the side holding the smaller endpoint index.
    if (std::min(u, v) == done_ep) {
      out.smaller = done->seen_list;
      out.smaller_endpoint = done_ep;
    } else {
      out.smaller = open->seen_list;
      out.smaller_endpoint = open_ep;
    }
  }
  std::sort(out.smaller.begin(), out.smaller.end());
  return out;
}

std::unique_ptr<ConnectivityBackend> make_default_connectivity() {
  return std::make_unique<SearchConnectivity>();
}

}  // namespace dsp
