#include "escapeflow/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <climits>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "escapeflow/rng.hpp"

namespace escapeflow {

int worker_count() {
    if (const char* env = std::getenv("ESCAPEFLOW_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    const std::size_t workers =
        std::min<std::size_t>(static_cast<std::size_t>(worker_count()), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                fn(i);
            }
        });
    for (std::thread& t : pool) t.join();
}

std::vector<VertexId> interior_ids(const LatticeSpec& spec) {
    std::vector<VertexId> out;
    if (spec.topology == Topology::Torus) {
        out.resize(spec.vertex_count());
        for (VertexId v = 0; v < out.size(); ++v) out[v] = v;
        return out;
    }
    int min_side = INT_MAX;
    for (int s : spec.sides) min_side = std::min(min_side, s);
    const int margin = min_side / 4;
    for (VertexId v = 0; v < spec.vertex_count(); ++v)
        if (boundary_distance(spec.unflatten(v), spec) >= margin) out.push_back(v);
    return out;
}

Forest make_scaled_msf_forest(const LatticeSpec& target, std::uint64_t seed,
                              const RootPolicy& policy) {
    std::vector<int> half(target.sides);
    for (int& s : half) {
        if (s % 2 != 0) throw std::invalid_argument("scaled forest needs even side lengths");
        s /= 2;
    }
    LatticeSpec half_spec(target.d, half, target.topology);
    Forest base;
    if (target.d == 2) {
        base = build_msf(half_spec, sample_weights(half_spec, seed));
    } else {
        base = layer_embed(half_spec, seed);
    }
    Forest oriented = orient_components(base, policy);
    Coord w = rng::draw_shift(seed, target.d);
    return scale_up(oriented, w);
}

const char* tri_verdict_name(TriVerdict v) {
    switch (v) {
        case TriVerdict::Pass: return "pass";
        case TriVerdict::Fail: return "fail";
        case TriVerdict::NotRun: return "not-run";
    }
    throw std::logic_error("unknown verdict");
}

EquivalenceReport equivalence_check(const Forest& f, std::uint64_t budget,
                                    std::uint64_t seed) {
    if (!f.oriented())
        throw std::invalid_argument("equivalence_check: forest must be oriented");
    if (f.spec.topology != Topology::BoxSink)
        throw std::invalid_argument("equivalence_check: requires box-sink topology");
    if (!verify_property_ii(f).ok)
        throw std::invalid_argument("equivalence_check: forest violates property (ii)");

    ResourceField<Int> raw = descendant_init(f, f.spec);
    ResourceField<Int> closed = raw;
    PeelState st = initial_peel_state(f);
    NeighborTable nbr(f.spec);
    std::vector<std::uint8_t> mask = root_mask(f);
    TiePicker pick = keyed_tie_picker(seed);

    EquivalenceReport rep;
    for (;;) {
        if (raw.values != closed.values || raw.sink != closed.sink) {
            std::ostringstream os;
            os << "field mismatch at step " << raw.step_index;
            rep.failure = os.str();
            return rep;
        }
        FluxReport flux = check_flux_stab(closed, f, st);
        if (!flux.ok) {
            rep.flux_ok = false;
            std::ostringstream os;
            os << "flux inequality violated at step " << closed.step_index;
            rep.failure = os.str();
            return rep;
        }
        if (raw.empty_of_resource()) {
            rep.extinction_step = raw.step_index;
            rep.pass = true;
            return rep;
        }
        if (raw.step_index >= budget) {
            rep.truncated = true;
            rep.failure = "budget exhausted before extinction";
            return rep;
        }
        RoutingDecision d = route(raw, nbr, &mask, pick);
        rep.total_ties += d.tie_count;
        if (d.tie_count != 0) {
            std::ostringstream os;
            os << "tie encountered at step " << raw.step_index;
            rep.failure = os.str();
            return rep;
        }
        raw = step(raw, d);
        closed = parent_forward_step(closed, f, st);
        st = peel(st, f);
    }
}

EscapeRun escape_run(const Forest& f, std::uint64_t seed, std::uint64_t budget) {
    ResourceField<Int> field = descendant_init(f, f.spec);
    std::vector<VertexId> interior = interior_ids(f.spec);

    EscapeRun out;
    out.seed = seed;
    out.interior_count = interior.size();
    out.initial_total = field.total();
    for (VertexId v : interior) out.initial_interior_sum += field.values[v];

    RunResult<Int> rr = run(std::move(field), budget, StopMode::Empty, seed, &f);
    out.completed = !rr.truncated;
    out.extinction_step = rr.trace.back().step;
    out.sink_final = rr.field.sink;
    for (VertexId v : interior) out.final_interior_sum += rr.field.values[v];
    return out;
}

EscapeReport aggregate_escape(const std::vector<EscapeRun>& runs) {
    EscapeReport rep;
    rep.runs = runs.size();
    double init_mean_sum = 0.0, final_mean_sum = 0.0;
    for (const EscapeRun& r : runs) {
        if (!r.completed) {
            ++rep.truncated;
            continue;  // truncated runs carry no exact-0 claim
        }
        ++rep.completed;
        if (r.final_interior_sum != 0) rep.final_interior_all_zero = false;
        if (r.sink_final != r.initial_total) rep.sink_matches_initial = false;
        if (r.initial_interior_sum < Int(r.interior_count))
            rep.initial_mean_at_least_one = false;
        init_mean_sum += r.initial_interior_sum.convert_to<double>() /
                         static_cast<double>(r.interior_count);
        final_mean_sum += r.final_interior_sum.convert_to<double>() /
                          static_cast<double>(r.interior_count);
    }
    if (rep.completed > 0) {
        rep.mean_initial_interior = init_mean_sum / static_cast<double>(rep.completed);
        rep.mean_final_interior = final_mean_sum / static_cast<double>(rep.completed);
    }
    return rep;
}

namespace {

double median(std::vector<double> xs) {
    if (xs.empty()) throw std::invalid_argument("median of empty sample");
    std::sort(xs.begin(), xs.end());
    const std::size_t n = xs.size();
    if (n % 2 == 1) return xs[n / 2];
    return 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

}  // namespace

DivergenceReport divergence_probe(const std::vector<int>& sides, int seeds_per_side,
                                  std::uint64_t seed0, double control_tol) {
    DivergenceReport rep;
    rep.sides = sides;
    for (int side : sides) {
        LatticeSpec spec(2, {side, side}, Topology::BoxSink);
        std::vector<VertexId> interior = interior_ids(spec);
        std::vector<double> means(static_cast<std::size_t>(seeds_per_side));
        std::vector<double> control(static_cast<std::size_t>(seeds_per_side));
        parallel_for(means.size(), [&](std::size_t i) {
            const std::uint64_t seed = seed0 + i;
            Forest f = make_scaled_msf_forest(spec, seed);
            ResourceField<Int> field = descendant_init(f, spec);
            Int sum = 0;
            for (VertexId v : interior) sum += field.values[v];
            means[i] = sum.convert_to<double>() / static_cast<double>(interior.size());

            ResourceField<double> ctl = iid_uniform_init(spec, 0.0, 1.0, seed);
            double csum = 0.0;
            for (VertexId v : interior) csum += ctl.values[v];
            control[i] = csum / static_cast<double>(interior.size());
        });
        rep.medians.push_back(median(means));
        rep.control_medians.push_back(median(control));
    }
    rep.increasing = true;
    for (std::size_t i = 1; i < rep.medians.size(); ++i)
        if (!(rep.medians[i] > rep.medians[i - 1])) rep.increasing = false;
    double lo = *std::min_element(rep.control_medians.begin(), rep.control_medians.end());
    double hi = *std::max_element(rep.control_medians.begin(), rep.control_medians.end());
    rep.control_spread = lo > 0.0 ? (hi - lo) / lo : 0.0;
    rep.control_flat = rep.control_spread <= control_tol;
    return rep;
}

FixationReport fixation_stats(const LatticeSpec& spec, const InitSpec& init, int runs,
                              std::uint64_t budget, std::uint64_t seed0) {
    if (init.kind == InitSpec::Kind::Descendants || init.kind == InitSpec::Kind::File)
        throw std::invalid_argument("fixation_stats expects an i.i.d. init");
    FixationReport rep;
    rep.runs = static_cast<std::size_t>(runs);
    rep.budget = budget;
    std::vector<std::optional<std::uint64_t>> times(static_cast<std::size_t>(runs));
    parallel_for(times.size(), [&](std::size_t i) {
        const std::uint64_t seed = seed0 + i;
        StopReason reason;
        std::uint64_t last_step;
        if (init.kind == InitSpec::Kind::IidInteger) {
            RunResult<Int> rr = run(iid_integer_init(spec, init.lo, init.hi, seed), budget,
                                    StopMode::Fixation, seed);
            reason = rr.reason;
            last_step = rr.trace.back().step;
        } else {
            ResourceField<double> f0 =
                init.kind == InitSpec::Kind::Uniform
                    ? iid_uniform_init(spec, init.a, init.b, seed)
                    : iid_exponential_init(spec, init.rate, seed);
            RunResult<double> rr = run(std::move(f0), budget, StopMode::Fixation, seed);
            reason = rr.reason;
            last_step = rr.trace.back().step;
        }
        if (reason == StopReason::Fixation) times[i] = last_step;
    });
    for (const auto& t : times)
        if (t) {
            ++rep.fixated;
            rep.times.push_back(*t);
        }
    return rep;
}

LightConeReport light_cone_check(int L, int m, int r, int steps, std::uint64_t seed,
                                 const InitSpec& init) {
    if (L < 4 || m < 1 || r < 0 || steps < 0)
        throw std::invalid_argument("light_cone_check: bad geometry");
    if (init.kind != InitSpec::Kind::Descendants && init.kind != InitSpec::Kind::Uniform)
        throw std::invalid_argument("light_cone_check: tie-free init required");

    const Topology topo =
        init.kind == InitSpec::Kind::Descendants ? Topology::BoxSink : Topology::BoxZero;
    LatticeSpec small(2, {L, L}, topo);
    LatticeSpec big(2, {L + 2 * m, L + 2 * m}, topo);
    const Coord center{L / 2, L / 2};
    const Coord offset{m, m};

    const int margin = boundary_distance(center, small) - r;
    if (r + 2 * steps > margin)
        throw std::invalid_argument(
            "light_cone_check: window too close to the boundary for this horizon");

    LightConeReport rep;
    std::uint64_t budget = static_cast<std::uint64_t>(steps);

    auto compare_window = [&](const auto& small_field, const auto& big_field) {
        for (const Coord& y : window(center, r, small)) {
            Coord yb(y);
            for (int i = 0; i < 2; ++i) yb[static_cast<std::size_t>(i)] += offset[static_cast<std::size_t>(i)];
            if (small_field.values[small.flatten(y)] != big_field.values[big.flatten(yb)])
                return false;
        }
        return true;
    };

    if (init.kind == InitSpec::Kind::Descendants) {
        Forest fs = make_scaled_msf_forest(small, seed);
        Forest fb = translate(fs, offset, big);
        RunResult<Int> rs = run(descendant_init(fs, small), budget, StopMode::Budget, seed, &fs);
        RunResult<Int> rb = run(descendant_init(fb, big), budget, StopMode::Budget, seed, &fb);
        rep.ties_small = rs.total_ties;
        rep.ties_big = rb.total_ties;
        if (rs.total_ties != 0 || rb.total_ties != 0) {
            rep.verdict = TriVerdict::NotRun;
            rep.detail = "tie encountered";
            return rep;
        }
        rep.verdict = compare_window(rs.field, rb.field) ? TriVerdict::Pass : TriVerdict::Fail;
    } else {
        // identical initialization on the overlap: the big field is keyed by
        // big-box coordinates and the small field is its restriction
        ResourceField<double> big_field = iid_uniform_init(big, init.a, init.b, seed);
        ResourceField<double> small_field(small);
        for (VertexId v = 0; v < small.vertex_count(); ++v) {
            Coord c = small.unflatten(v);
            for (int i = 0; i < 2; ++i) c[static_cast<std::size_t>(i)] += offset[static_cast<std::size_t>(i)];
            small_field.values[v] = big_field.values[big.flatten(c)];
        }
        small_field.rebuild_support();
        RunResult<double> rs = run(std::move(small_field), budget, StopMode::Budget, seed);
        RunResult<double> rb = run(std::move(big_field), budget, StopMode::Budget, seed);
        rep.ties_small = rs.total_ties;
        rep.ties_big = rb.total_ties;
        if (rs.total_ties != 0 || rb.total_ties != 0) {
            rep.verdict = TriVerdict::NotRun;
            rep.detail = "tie encountered";
            return rep;
        }
        rep.verdict = compare_window(rs.field, rb.field) ? TriVerdict::Pass : TriVerdict::Fail;
    }
    if (rep.verdict == TriVerdict::Fail) rep.detail = "window mismatch";
    return rep;
}

}  // namespace escapeflow
