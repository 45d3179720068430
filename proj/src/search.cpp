#include "orth/search.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <limits>
#include <mutex>
#include <thread>

#include "orth/error.hpp"

namespace orth {

const char* to_string(FrameClass c) {
  switch (c) {
    case FrameClass::Compatibility: return "compatibility";
    case FrameClass::Epistemic: return "epistemic";
    case FrameClass::Conditional: return "conditional";
  }
  return "?";
}

std::optional<FrameClass> frame_class_from_string(const std::string& s) {
  for (auto c : {FrameClass::Compatibility, FrameClass::Epistemic, FrameClass::Conditional})
    if (s == to_string(c)) return c;
  return std::nullopt;
}

const char* to_string(SearchResult::Status s) {
  switch (s) {
    case SearchResult::Status::Found: return "found";
    case SearchResult::Status::NoneUpToBound: return "none-up-to-bound";
    case SearchResult::Status::BudgetExhausted: return "budget-exhausted";
  }
  return "?";
}

int size_cap(FrameClass c) {
  switch (c) {
    case FrameClass::Compatibility: return 7;
    case FrameClass::Epistemic: return 7;
    case FrameClass::Conditional: return 4;
  }
  return 0;
}

namespace {

std::vector<std::pair<int, int>> edge_list(int n) {
  std::vector<std::pair<int, int>> e;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) e.emplace_back(a, b);
  return e;
}

// Calls f on every permutation that only shuffles inside the given blocks.
void block_perms(const std::vector<std::pair<int, int>>& blocks, std::vector<int>& p, std::size_t k,
                 const std::function<bool(const std::vector<int>&)>& f, bool& stop) {
  if (stop) return;
  if (k == blocks.size()) {
    if (!f(p)) stop = true;
    return;
  }
  auto [lo, hi] = blocks[k];
  std::sort(p.begin() + lo, p.begin() + hi);
  do {
    block_perms(blocks, p, k + 1, f, stop);
    if (stop) return;
  } while (std::next_permutation(p.begin() + lo, p.begin() + hi));
}

Frame make_frame(const std::vector<Mask>& compat) {
  const int n = static_cast<int>(compat.size());
  std::vector<std::string> names;
  for (int k = 1; k <= n; ++k) names.push_back("x" + std::to_string(k));
  Frame F(names);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (has(compat[a], b)) F.set_compat(a, b);
  return F;
}

}  // namespace

std::vector<std::vector<Mask>> canonical_graphs(int n) {
  if (n < 1 || n > 7) throw ValidationError("graph enumeration supports 1..7 points");
  const auto edges = edge_list(n);
  const int E = static_cast<int>(edges.size());
  std::vector<std::vector<Mask>> out;
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << E); ++code) {
    std::vector<Mask> adj(n);
    for (int a = 0; a < n; ++a) adj[a] = bit(a);
    for (int k = 0; k < E; ++k)
      if (code >> (E - 1 - k) & 1) {
        adj[edges[k].first] |= bit(edges[k].second);
        adj[edges[k].second] |= bit(edges[k].first);
      }
    bool sorted = true;
    for (int a = 0; a + 1 < n && sorted; ++a) sorted = count(adj[a]) >= count(adj[a + 1]);
    if (!sorted) continue;
    std::vector<std::pair<int, int>> blocks;
    for (int a = 0; a < n;) {
      int b = a;
      while (b < n && count(adj[b]) == count(adj[a])) ++b;
      blocks.emplace_back(a, b);
      a = b;
    }
    std::vector<int> p(n);
    for (int a = 0; a < n; ++a) p[a] = a;
    bool canonical = true, stop = false;
    block_perms(blocks, p, 0,
                [&](const std::vector<int>& q) {
                  std::uint64_t c = 0;
                  for (int k = 0; k < E; ++k)
                    if (has(adj[q[edges[k].first]], q[edges[k].second])) c |= std::uint64_t{1} << (E - 1 - k);
                  if (c > code) canonical = false;
                  return canonical;
                },
                stop);
    if (canonical) out.push_back(adj);
  }
  return out;
}

std::vector<std::vector<int>> automorphisms(const std::vector<Mask>& compat) {
  const int n = static_cast<int>(compat.size());
  std::vector<int> p(n);
  for (int a = 0; a < n; ++a) p[a] = a;
  std::vector<std::vector<int>> out;
  do {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a)
      for (int b = a + 1; b < n && ok; ++b) ok = has(compat[p[a]], p[b]) == has(compat[a], b);
    if (ok) out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

std::vector<Frame> enumerate_frames(FrameClass c, int n) {
  if (n < 1 || n > size_cap(c)) throw ValidationError("frame size outside 1.." + std::to_string(size_cap(c)));
  if (c == FrameClass::Conditional) throw ValidationError("conditional frames are enumerated by the hunt");
  std::vector<Frame> out;
  for (const auto& g : canonical_graphs(n)) {
    Frame F = make_frame(g);
    if (c == FrameClass::Compatibility) {
      out.push_back(F);
      continue;
    }
    // Factivity: i(x) must be refined by x.
    std::vector<std::vector<int>> cand(n);
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        if (refines(F, x, y)) cand[x].push_back(y);
    auto auts = automorphisms(g);
    std::vector<std::vector<int>> inv(auts.size(), std::vector<int>(n));
    for (std::size_t k = 0; k < auts.size(); ++k)
      for (int a = 0; a < n; ++a) inv[k][auts[k][a]] = a;
    std::vector<std::size_t> idx(n, 0);
    std::vector<int> ival(n);
    while (true) {
      for (int x = 0; x < n; ++x) ival[x] = cand[x][idx[x]];
      // Keep the lexicographically least member of the automorphism orbit.
      bool least = true;
      for (std::size_t k = 1; k < auts.size() && least; ++k) {
        const auto& p = auts[k];
        for (int a = 0; a < n; ++a) {
          int v = inv[k][ival[p[a]]];
          if (v != ival[a]) {
            least = v > ival[a];
            break;
          }
        }
      }
      if (least) {
        for (int x = 0; x < n; ++x) F.set_i(x, ival[x]);
        if (!check_epistemic(F)) out.push_back(F);
      }
      int j = n - 1;
      while (j >= 0 && ++idx[j] == cand[j].size()) idx[j--] = 0;
      if (j < 0) break;
    }
  }
  return out;
}

namespace {

struct Hit {
  Model model;
  int point = -1;
};

// Checks one frame; returns a verified hit or nullopt.
std::optional<Hit> check_frame(const SearchSpec& spec, const Frame& F) {
  if (spec.goal) {
    auto cm = entails_on_frame(F, spec.goal->lhs, spec.goal->rhs, spec.bool_atoms);
    if (!cm) return std::nullopt;
    Model M{F, cm->valuation, spec.bool_atoms};
    // Independent re-check through forcing.
    if (!forces(M, cm->point, spec.goal->lhs) || forces(M, cm->point, spec.goal->rhs))
      throw Error("internal: countermodel failed re-verification");
    return Hit{M, cm->point};
  }
  auto fail = verify_principle(F, *spec.schema);
  if (!fail) return std::nullopt;
  Model M{F, fail->substitution, spec.schema->bool_vars};
  const auto& c = spec.schema->conclusions[fail->conclusion];
  if (!forces(M, fail->point, c.lhs) || forces(M, fail->point, c.rhs))
    throw Error("internal: schema failure did not re-verify");
  return Hit{M, fail->point};
}

struct Outcome {
  std::optional<Hit> hit;
  bool exhausted = false;
  std::uint64_t examined = 0;
};

// Selection-table search on one epistemic frame.
Outcome search_selections(const SearchSpec& spec, const std::vector<FrameCondition>& conds, Frame F) {
  Outcome out;
  F.set_bool_family({Mask{0}, F.all()});
  F.enable_selection();
  const auto P = F.prop_family();
  const int n = F.size();
  std::vector<FrameCondition> local;
  bool flat = false;
  for (auto c : conds) {
    if (c == FrameCondition::Flat)
      flat = true;
    else
      local.push_back(c);
  }
  local.push_back(FrameCondition::CRegularity);
  std::vector<std::vector<std::vector<int>>> cols(P.size());
  for (std::size_t a = 0; a < P.size(); ++a) {
    const Mask A = P[a];
    std::vector<int> v(n, -1);
    while (true) {
      for (int x = 0; x < n; ++x) F.set_c(x, A, v[x]);
      bool ok = true;
      for (auto c : local)
        if (check_condition_for(F, c, A)) {
          ok = false;
          break;
        }
      for (std::size_t b = 0; b < P.size() && ok; ++b) ok = F.prop_index(arrow_set(F, A, P[b])) >= 0;
      if (ok) cols[a].push_back(v);
      int j = n - 1;
      while (j >= 0 && ++v[j] == n) v[j--] = -1;
      if (j < 0) break;
    }
    if (cols[a].empty()) return out;
    for (int x = 0; x < n; ++x) F.set_c(x, A, -1);
  }
  std::vector<std::size_t> idx(P.size(), 0);
  while (true) {
    if (out.examined >= spec.budget) {
      out.exhausted = true;
      return out;
    }
    ++out.examined;
    for (std::size_t a = 0; a < P.size(); ++a)
      for (int x = 0; x < n; ++x) F.set_c(x, P[a], cols[a][idx[a]][x]);
    if (!flat || !check_condition(F, FrameCondition::Flat)) {
      if (auto h = check_frame(spec, F)) {
        if (check_epistemic(F)) throw Error("internal: hunt frame is not a conditional epistemic frame");
        for (auto c : conds)
          if (check_condition(F, c)) throw Error("internal: hunt frame violates a requested constraint");
        out.hit = h;
        return out;
      }
    }
    std::size_t j = P.size();
    while (j > 0) {
      --j;
      if (++idx[j] < cols[j].size()) break;
      idx[j] = 0;
      if (j == 0) return out;
    }
    if (P.empty()) return out;
  }
}

SearchResult run_search(const SearchSpec& spec, const std::vector<FrameCondition>& conds) {
  if (!spec.goal && !spec.schema) throw ValidationError("search needs a goal or a schema");
  if (spec.max_size < 1 || spec.min_size < 1) throw ValidationError("sizes must be at least 1");
  if (spec.max_size > size_cap(spec.cls))
    throw ValidationError("max size exceeds the cap of " + std::to_string(size_cap(spec.cls)) + " for class " +
                          to_string(spec.cls));
  SearchResult res;
  std::uint64_t used = 0;
  const int threads = std::max(1, spec.threads);
  for (int n = spec.min_size; n <= spec.max_size; ++n) {
    const FrameClass base = spec.cls == FrameClass::Conditional ? FrameClass::Epistemic : spec.cls;
    auto frames = enumerate_frames(base, n);
    const std::size_t N = frames.size();
    // Frames with index at or beyond `allowed` are outside the budget.
    std::size_t allowed = N;
    if (spec.cls != FrameClass::Conditional && used + N > spec.budget) allowed = spec.budget - std::min(used, spec.budget);
    std::vector<Outcome> outcomes(N);
    std::atomic<std::size_t> next{0}, best{std::numeric_limits<std::size_t>::max()};
    std::exception_ptr err;
    std::mutex mu;
    auto worker = [&] {
      try {
        while (true) {
          std::size_t k = next++;
          if (k >= allowed || k > best.load()) return;
          Outcome o;
          if (spec.cls == FrameClass::Conditional) {
            o = search_selections(spec, conds, frames[k]);
          } else {
            o.examined = 1;
            try {
              o.hit = check_frame(spec, frames[k]);
            } catch (const BudgetExhausted&) {
              o.exhausted = true;
            }
          }
          bool stop = o.hit || o.exhausted;
          outcomes[k] = std::move(o);
          if (stop) {
            std::size_t cur = best.load();
            while (k < cur && !best.compare_exchange_weak(cur, k)) {
            }
          }
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!err) err = std::current_exception();
      }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
    std::uint64_t examined = 0;
    const std::size_t stop_at = std::min(best.load(), allowed);
    for (std::size_t k = 0; k < N && k <= stop_at && k < allowed; ++k) examined += outcomes[k].examined;
    res.log.push_back({n, examined});
    used += examined;
    if (best.load() < allowed) {
      auto& o = outcomes[best.load()];
      if (o.hit) {
        res.status = SearchResult::Status::Found;
        res.model = o.hit->model;
        res.point = o.hit->point;
      } else {
        res.status = SearchResult::Status::BudgetExhausted;
        res.note = "budget exhausted at size " + std::to_string(n) + " before a countermodel was found";
      }
      return res;
    }
    if (allowed < N) {
      res.status = SearchResult::Status::BudgetExhausted;
      res.note = "frame budget exhausted at size " + std::to_string(n);
      return res;
    }
  }
  res.status = SearchResult::Status::NoneUpToBound;
  return res;
}

}  // namespace

SearchResult find_countermodel(const SearchSpec& spec) { return run_search(spec, {}); }

std::optional<FrameCondition> paired_condition(const std::string& principle) {
  int num = 0;
  if (!principle.empty() && std::all_of(principle.begin(), principle.end(), ::isdigit)) {
    num = std::stoi(principle);
  } else if (auto* s = find_principle(principle)) {
    num = s->number;
  } else if (auto c = frame_condition_from_string(principle)) {
    num = condition_number(*c);
  }
  for (auto c : selection_conditions())
    if (condition_number(c) == num) return c;
  return std::nullopt;
}

SearchResult qualified_collapse_hunt(const HuntSpec& h) {
  std::vector<FrameCondition> conds;
  for (const auto& p : h.principles) {
    auto c = paired_condition(p);
    if (!c) throw ValidationError("no frame constraint is paired with principle " + p);
    if (std::find(conds.begin(), conds.end(), *c) == conds.end()) conds.push_back(*c);
  }
  SearchSpec s;
  s.goal = Sequent{parse("psi & (psi -> <>(psi & phi))"), parse("phi -> psi")};
  s.cls = FrameClass::Conditional;
  s.min_size = h.min_size;
  s.max_size = h.max_size;
  s.budget = h.budget;
  s.threads = h.threads;
  return run_search(s, conds);
}

std::vector<Ortholattice> small_ortholattices(int max_elems) {
  std::vector<Ortholattice> out;
  for (int n = 1; n <= 6; ++n)
    for (const auto& g : canonical_graphs(n)) {
      auto P = proposition_lattice(make_frame(g));
      if (P.lattice.size() > max_elems) continue;
      bool seen = false;
      for (const auto& L : out)
        if (L.size() == P.lattice.size() && iso_check(L, P.lattice)) {
          seen = true;
          break;
        }
      if (!seen) out.push_back(P.lattice);
    }
  std::stable_sort(out.begin(), out.end(), [](const Ortholattice& a, const Ortholattice& b) { return a.size() < b.size(); });
  return out;
}

}  // namespace orth
