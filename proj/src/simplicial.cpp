#include "zigzag/simplicial.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace zigzag {

const char* to_string(DegeneracyVerdict v) {
    switch (v) {
    case DegeneracyVerdict::endpoint: return "endpoint";
    case DegeneracyVerdict::arc_or_point: return "arc-or-point";
    case DegeneracyVerdict::trivially_flat: return "trivially-flat";
    }
    return "?";
}

namespace {

void validate_sets(const SimplicialSystem& sys) {
    if (sys.S.size() != sys.maps.size() + 1)
        throw DomainError("simplicial system needs one vertex set per level");
    for (const auto& s : sys.S) {
        if (s.empty() || s.front() != Rat(-1) || s.back() != Rat(1))
            throw DomainError("vertex sets must contain -1 and 1");
        for (std::size_t i = 1; i < s.size(); ++i)
            if (!(s[i - 1] < s[i])) throw DomainError("vertex sets must be sorted");
    }
}

bool contains(const std::vector<Rat>& s, const Rat& x) {
    return std::binary_search(s.begin(), s.end(), x,
                              [](const Rat& a, const Rat& b) { return a < b; });
}

} // namespace

SimplicialCheck check_simplicial(const SimplicialSystem& sys) {
    validate_sets(sys);
    SimplicialCheck out;
    for (std::size_t n = 1; n <= sys.maps.size(); ++n) {
        const PLMap f = canonicalize(sys.maps[n - 1]);
        const auto& Sn = sys.S[n - 1];
        const auto& Sn1 = sys.S[n];
        for (const auto& v : Sn1) {
            if (!contains(Sn, f(v))) {
                out.ok = false;
                out.failures.push_back("level " + std::to_string(n) + ": f(" + v.str() +
                                       ") = " + f(v).str() + " escapes S_" +
                                       std::to_string(n));
            }
        }
        for (std::size_t i = 0; i + 1 < Sn1.size(); ++i) {
            const Rat &u = Sn1[i], &v = Sn1[i + 1];
            // constant on (u, v)?
            bool constant = true;
            Rat val = f(u);
            for (const auto& p : f.breakpoints())
                if (u < p.x && p.x < v && p.y != val) constant = false;
            if (f(v) != val) constant = false;
            if (constant) continue;
            // linear on (u, v)?
            bool linear = true;
            for (const auto& p : f.breakpoints())
                if (u < p.x && p.x < v) linear = false;
            if (!linear) {
                out.ok = false;
                out.failures.push_back("level " + std::to_string(n) + ": component (" +
                                       u.str() + "," + v.str() +
                                       ") is neither constant nor linear");
                continue;
            }
            Rat flo = min(f(u), f(v)), fhi = max(f(u), f(v));
            for (const auto& s : Sn) {
                if (flo < s && s < fhi) {
                    out.ok = false;
                    out.failures.push_back("level " + std::to_string(n) + ": component (" +
                                           u.str() + "," + v.str() + ") maps across " +
                                           s.str() + " in S_" + std::to_string(n));
                    break;
                }
            }
        }
    }
    return out;
}

SimplicialSystem markov_refine(const PLMap& f, std::vector<Rat> S1, std::size_t depth) {
    std::sort(S1.begin(), S1.end());
    S1.erase(std::unique(S1.begin(), S1.end()), S1.end());
    if (S1.empty() || S1.front() != Rat(-1) || S1.back() != Rat(1))
        throw DomainError("markov_refine: S1 must contain -1 and 1");
    PLMap fc = canonicalize(f);
    for (const auto& p : fc.breakpoints())
        if (!contains(S1, p.y))
            throw DomainError("markov_refine: S1 is missing the breakpoint image " +
                              p.y.str());

    SimplicialSystem sys;
    sys.S.push_back(S1);
    for (std::size_t d = 0; d < depth; ++d) {
        sys.maps.push_back(fc);
        std::vector<Rat> next;
        for (const auto& s : sys.S.back())
            for (const auto& x : preimages(fc, s)) next.push_back(x);
        for (const auto& p : fc.breakpoints()) next.push_back(p.x);
        next.push_back(Rat(-1));
        next.push_back(Rat(1));
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        sys.S.push_back(std::move(next));
    }
    auto chk = check_simplicial(sys);
    if (!chk.ok)
        throw InvariantViolation("markov_refine: refinement failed its own check: " +
                                 chk.failures.front());
    return sys;
}

namespace {

/* The canonical normalization homeomorphism at one level. Linear on every
   component of the complement of Sn, x |-> 0, vertex images spread evenly
   on each side of the component of x. */
PLMap normalization_h(const std::vector<Rat>& Sn, const Rat& x) {
    std::vector<Breakpoint> pts;
    bool on_vertex = contains(Sn, x);
    if (on_vertex) {
        long kl = 0, kr = 0;
        for (const auto& s : Sn) {
            if (s < x) ++kl;
            if (s > x) ++kr;
        }
        if (kl == 0 || kr == 0)
            throw DomainError("normalize: thread point at an endpoint vertex");
        long j = 0;
        for (const auto& s : Sn) {
            if (s < x) {
                ++j;
                pts.push_back({s, Rat(-1) + Rat(j - 1, kl)});
            } else if (s == x) {
                pts.push_back({s, Rat(0)});
            }
        }
        long i = 0;
        for (const auto& s : Sn) {
            if (s > x) {
                ++i;
                pts.push_back({s, Rat(i, kr)});
            }
        }
    } else {
        // x sits inside the component (u, v)
        Rat u(-1), v(1);
        for (const auto& s : Sn) {
            if (s < x) u = s;
        }
        for (auto it = Sn.rbegin(); it != Sn.rend(); ++it)
            if (*it > x) v = *it;
        long kl = 0, kr = 0;
        for (const auto& s : Sn) {
            if (s <= u) ++kl;
            if (s >= v) ++kr;
        }
        Rat A, B; // h(u) = -A, h(v) = B, forced collinear through (x, 0)
        if (u == Rat(-1)) {
            Rat m = Rat(1) / (x + Rat(1));
            A = Rat(1);
            B = m * (v - x);
            if (!(B < Rat(1)))
                throw DomainError("normalize: no component-linear homeomorphism exists "
                                  "(thread point too close to -1 in a wide component)");
        } else if (v == Rat(1)) {
            Rat m = Rat(1) / (Rat(1) - x);
            B = Rat(1);
            A = m * (x - u);
            if (!(A < Rat(1)))
                throw DomainError("normalize: no component-linear homeomorphism exists "
                                  "(thread point too close to 1 in a wide component)");
        } else {
            Rat m = min(Rat(1, 2) / (x - u), Rat(1, 2) / (v - x));
            A = m * (x - u);
            B = m * (v - x);
        }
        long j = 0;
        for (const auto& s : Sn) {
            if (s <= u) {
                ++j;
                Rat target = (kl == 1) ? -A : Rat(-1) + (Rat(1) - A) * Rat(j - 1, kl - 1);
                pts.push_back({s, target});
            }
        }
        long i = 0;
        for (const auto& s : Sn) {
            if (s >= v) {
                ++i;
                Rat target = (kr == 1) ? B : B + (Rat(1) - B) * Rat(i - 1, kr - 1);
                pts.push_back({s, target});
            }
        }
    }
    PLMap h{std::move(pts)};
    for (std::size_t i = 1; i < h.breakpoints().size(); ++i)
        if (!(h.breakpoints()[i - 1].y < h.breakpoints()[i].y))
            throw InvariantViolation("normalize: homeomorphism is not increasing");
    if (h(x) != Rat(0)) throw InvariantViolation("normalize: h(x) != 0");
    return h;
}

} // namespace

NormalizeResult normalize_point(const SimplicialSystem& sys_in, const std::vector<Rat>& thread_in) {
    validate_sets(sys_in);
    if (thread_in.size() != sys_in.S.size())
        throw ThreadError("normalize: thread must give one coordinate per level", 0);
    for (std::size_t n = 0; n < sys_in.maps.size(); ++n)
        if (sys_in.maps[n](thread_in[n + 1]) != thread_in[n])
            throw ThreadError("normalize: not a thread at level " + std::to_string(n + 1),
                              (int)n + 1);

    for (const auto& x : thread_in)
        if (x == Rat(-1) || x == Rat(1))
            return NormalizeResult{DegeneracyVerdict::endpoint, std::nullopt};

    bool all_trivial = true;
    for (const auto& s : sys_in.S)
        if (s.size() != 2) all_trivial = false;
    if (all_trivial) return NormalizeResult{DegeneracyVerdict::arc_or_point, std::nullopt};

    // compose out interior-point-free levels so every remaining set has one
    SimplicialSystem sys = sys_in;
    std::vector<Rat> thread = thread_in;
    for (std::size_t n = sys.S.size(); n-- > 0;) {
        if (sys.S[n].size() != 2) continue;
        if (n + 1 == sys.S.size()) {
            sys.S.pop_back();
            sys.maps.pop_back();
            thread.pop_back();
        } else if (n == 0) {
            sys.S.erase(sys.S.begin());
            sys.maps.erase(sys.maps.begin());
            thread.erase(thread.begin());
        } else {
            sys.maps[n - 1] = compose(sys.maps[n - 1], sys.maps[n]);
            sys.maps.erase(sys.maps.begin() + n);
            sys.S.erase(sys.S.begin() + n);
            thread.erase(thread.begin() + n);
        }
    }
    if (sys.maps.empty())
        return NormalizeResult{DegeneracyVerdict::arc_or_point, std::nullopt};

    Normalization out;
    out.h.reserve(sys.S.size());
    for (std::size_t n = 0; n < sys.S.size(); ++n)
        out.h.push_back(normalization_h(sys.S[n], thread[n]));

    out.sys.S.clear();
    for (std::size_t n = 0; n < sys.S.size(); ++n) {
        std::vector<Rat> img;
        for (const auto& s : sys.S[n]) img.push_back(out.h[n](s));
        out.sys.S.push_back(std::move(img));
    }
    for (std::size_t n = 0; n < sys.maps.size(); ++n) {
        PLMap conj = compose(compose(out.h[n], sys.maps[n]), invert(out.h[n + 1]));
        // conjugation correctness: f'_n o h_{n+1} = h_n o f_n, exactly
        if (!(compose(conj, out.h[n + 1]) == compose(out.h[n], sys.maps[n])))
            throw InvariantViolation("normalize: conjugation identity failed at level " +
                                     std::to_string(n + 1));
        if (conj(Rat(0)) != Rat(0))
            throw InvariantViolation("normalize: conjugated map does not fix 0");
        out.sys.maps.push_back(std::move(conj));
    }

    auto chk = check_simplicial(out.sys);
    if (!chk.ok)
        throw InvariantViolation("normalize: conjugated system fails the simplicial check: " +
                                 chk.failures.front());
    return NormalizeResult{std::nullopt, std::move(out)};
}

namespace {

std::string rcf_key(const PLMap& m) {
    PLMap t = radial_contour_factor(PointedPLMap{m});
    std::ostringstream os;
    for (const auto& p : t.breakpoints()) os << p.x << "," << p.y << ";";
    return os.str();
}

} // namespace

Schedule find_schedule(const SimplicialSystem& sys, std::size_t depth_budget) {
    if (depth_budget < 2) throw DomainError("find_schedule: budget must be at least 2");
    std::size_t levels = sys.S.size(); // indices run over 1..levels

    Schedule sched;
    sched.indices.push_back(1);

    // J: indices still in the running, all sharing one contour key per stage
    std::vector<std::size_t> J;
    for (std::size_t m = 2; m <= std::min(levels, (std::size_t)1 + depth_budget); ++m)
        J.push_back(m);

    // contour values of every composite from level 1 must land in S_1; this
    // is what makes the key space finite and the pigeonhole meaningful
    auto check_key_values = [&](const PLMap& composite, std::size_t frontier) {
        if (frontier != 1) return;
        ContourData cd = contour_points(PointedPLMap{composite});
        for (std::size_t i = 1; i <= cd.n(); ++i)
            if (!contains(sys.S[0], cd.alpha(i).value))
                throw InvariantViolation("find_schedule: contour value " +
                                         cd.alpha(i).value.str() + " escapes S_1");
        for (std::size_t j = 1; j <= cd.m(); ++j)
            if (!contains(sys.S[0], cd.beta(j).value))
                throw InvariantViolation("find_schedule: contour value " +
                                         cd.beta(j).value.str() + " escapes S_1");
    };

    while (true) {
        std::size_t nk = sched.indices.back();
        // composites f^m_{nk} for candidate m in J, grouped by contour key
        std::map<std::string, std::vector<std::size_t>> classes;
        std::map<std::size_t, std::string> key_of;
        PLMap g = sys.maps[nk - 1];
        std::size_t reach = nk + 1;
        for (std::size_t m : J) {
            while (reach < m) {
                g = compose(g, sys.maps[reach - 1]);
                ++reach;
            }
            std::string key = rcf_key(g); // throws DegenerateSideError on a flat side
            check_key_values(g, nk);
            classes[key].push_back(m);
            key_of[m] = key;
        }
        // smallest m whose key recurs later
        std::optional<std::size_t> pick;
        for (std::size_t m : J) {
            const auto& cls = classes[key_of[m]];
            if (cls.size() >= 2 && cls.front() == m) {
                pick = m;
                break;
            }
        }
        if (!pick) {
            if (sched.indices.size() >= 4) break; // enough stages to rewire
            std::ostringstream census;
            census << "find_schedule: budget " << depth_budget << " exhausted at stage "
                   << sched.indices.size() << " (frontier " << nk << "); key census:";
            for (const auto& [k, v] : classes) census << " [x" << v.size() << "]";
            throw BudgetError(census.str());
        }
        sched.indices.push_back(*pick);
        sched.keys.push_back(key_of[*pick]);
        std::vector<std::size_t> nextJ;
        for (std::size_t m : classes[key_of[*pick]])
            if (m != *pick) nextJ.push_back(m);
        J = std::move(nextJ);
        if (J.size() < 2 && sched.indices.size() >= 4) break;
        if (J.empty()) {
            if (sched.indices.size() >= 4) break;
            throw BudgetError("find_schedule: matched class exhausted before a usable "
                              "schedule emerged (need 4 indices, have " +
                              std::to_string(sched.indices.size()) + ")");
        }
    }

    // the schedule invariant, re-verified exactly
    for (std::size_t k = 0; k + 2 < sched.indices.size(); ++k) {
        std::size_t a = sched.indices[k], b = sched.indices[k + 1], c = sched.indices[k + 2];
        PLMap Fk = sys.maps[a - 1];
        for (std::size_t m = a + 1; m < b; ++m) Fk = compose(Fk, sys.maps[m - 1]);
        PLMap Fkk = Fk;
        for (std::size_t m = b; m < c; ++m) Fkk = compose(Fkk, sys.maps[m - 1]);
        if (!(radial_contour_factor(PointedPLMap{Fk}) ==
              radial_contour_factor(PointedPLMap{Fkk})))
            throw InvariantViolation("find_schedule: invariant fails at stage " +
                                     std::to_string(k + 1));
    }
    return sched;
}

PipelineOutcome pipeline(const SimplicialSystem& sys, const std::vector<Rat>& thread,
                         std::size_t depth_budget) {
    PipelineOutcome out;
    auto chk = check_simplicial(sys);
    if (!chk.ok)
        throw HypothesisError("pipeline: system is not simplicial: " + chk.failures.front());

    NormalizeResult nr = normalize_point(sys, thread);
    if (nr.verdict) {
        out.verdict = nr.verdict;
        return out;
    }
    out.normalized = nr.normalized;

    Schedule sched;
    try {
        sched = find_schedule(out.normalized->sys, depth_budget);
    } catch (const DegenerateSideError&) {
        out.verdict = DegeneracyVerdict::trivially_flat;
        return out;
    }
    out.schedule = sched;

    SystemPrefix pointed;
    for (const auto& m : out.normalized->sys.maps) pointed.maps.emplace_back(m);
    out.scheduled = compose_schedule(pointed, sched.indices);
    out.rewired = rewire(*out.scheduled);
    return out;
}

} // namespace zigzag
