#include "zigzag/systems.hpp"

namespace zigzag {

SystemPrefix compose_schedule(const SystemPrefix& p, const std::vector<std::size_t>& cuts) {
    if (cuts.empty() || cuts.front() != 1)
        throw DomainError("compose_schedule: cut indices must start at 1");
    for (std::size_t i = 1; i < cuts.size(); ++i)
        if (!(cuts[i - 1] < cuts[i])) throw DomainError("compose_schedule: cuts not increasing");
    if (cuts.back() > p.size() + 1)
        throw DomainError("compose_schedule: cut index beyond prefix");

    SystemPrefix out;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        std::size_t n = cuts[i], m = cuts[i + 1];
        PLMap g = p.maps[n - 1].map(); // f_n
        for (std::size_t k = n + 1; k < m; ++k) g = compose(g, p.maps[k - 1].map());
        out.maps.emplace_back(g);
    }
    return out;
}

SystemPrefix drop_prefix(const SystemPrefix& p, std::size_t n0) {
    if (n0 < 1 || n0 > p.size()) throw DomainError("drop_prefix: index out of range");
    SystemPrefix out;
    for (std::size_t k = n0 - 1; k < p.size(); ++k) out.maps.push_back(p.maps[k]);
    return out;
}

ChainCheck check_same_contour_chain(const SystemPrefix& p) {
    ChainCheck out;
    for (std::size_t n = 1; n + 1 <= p.size(); ++n) {
        PLMap tn = radial_contour_factor(p.maps[n - 1]);
        PLMap tc = radial_contour_factor(
            PointedPLMap{compose(p.maps[n - 1].map(), p.maps[n].map())});
        if (!(tn == tc)) {
            out.ok = false;
            out.first_failure = n;
            return out;
        }
    }
    return out;
}

ZigzagFreeReport check_zigzag_free(const std::vector<PLMap>& maps) {
    ZigzagFreeReport rep;
    for (const auto& m : maps) {
        PointedPLMap f{m};
        OrientationReport r;
        r.has_positive = radial_departure_exists(f, Orientation::positive).has_value();
        r.has_negative = radial_departure_exists(f, Orientation::negative).has_value();
        rep.per_map.push_back(r);
        if (r.has_positive && r.has_negative) rep.certificate = false;
    }
    return rep;
}

RewireResult rewire(const SystemPrefix& p) {
    if (p.size() < 3) throw DomainError("rewire: need at least three maps");
    ChainCheck chain = check_same_contour_chain(p);
    if (!chain.ok)
        throw HypothesisError("rewire: contour chain fails at n = " +
                              std::to_string(chain.first_failure) +
                              " (t_{f_n} != t_{f_n o f_{n+1}})");

    RewireResult out;
    out.original = p;
    std::vector<char> consumed(p.size() + 2, 0);
    for (std::size_t n = 1; n + 2 <= p.size(); n += 2) {
        BridgedFactor bf =
            build_bridged_s(p.maps[n - 1], p.maps[n], p.maps[n + 1]);
        if (!bf.report.all_pass())
            throw InvariantViolation("rewire: bridged factor at n = " + std::to_string(n) +
                                     " failed verification");
        PLMap rew = compose(bf.s_tilde, bf.t3);
        out.rewired.push_back(rew);
        out.factors.emplace_back(bf.t1, bf.s_tilde);
        out.bridged.push_back(std::move(bf));
        consumed[n] = consumed[n + 1] = consumed[n + 2] = 1;
    }
    for (std::size_t n = 1; n <= p.size(); ++n)
        if (!consumed[n]) out.trailing_levels.push_back(n);

    out.certificates = check_zigzag_free(out.rewired);
    for (const auto& r : out.certificates.per_map)
        if (r.has_negative)
            throw InvariantViolation("rewire: a rewired map has a negative radial departure");
    return out;
}

std::vector<Rat> coordinate_map_h(const RewireResult& r, const std::vector<Rat>& thread) {
    const SystemPrefix& p = r.original;
    if (thread.size() < 3) throw ThreadError("coordinate_map_h: thread too short", 0);
    for (std::size_t n = 0; n + 1 < thread.size() && n < p.size(); ++n) {
        if (p.maps[n](thread[n + 1]) != thread[n])
            throw ThreadError("coordinate_map_h: not a thread at level " +
                                  std::to_string(n + 1) + ": f(" + thread[n + 1].str() +
                                  ") = " + p.maps[n](thread[n + 1]).str() + " != " +
                                  thread[n].str(),
                              (int)n + 1);
    }

    std::vector<Rat> out;
    for (std::size_t k = 1; 2 * k + 1 <= thread.size() && k <= r.factors.size(); ++k)
        out.push_back(r.factors[k - 1].second(thread[2 * k]));

    // the image must thread through the rewired maps
    for (std::size_t k = 0; k + 1 < out.size(); ++k)
        if (r.rewired[k](out[k + 1]) != out[k])
            throw InvariantViolation("coordinate_map_h: image fails the thread property at "
                                     "rewired level " + std::to_string(k + 1));
    return out;
}

} // namespace zigzag
