#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cuspidal/feasibility.hpp"

namespace cuspidal {

/// A marked point on the curve. Cusps carry their compact sequence;
/// an empty sequence is a named smooth point.
struct CurvePoint {
    std::string id;
    std::vector<Int> seq;

    bool is_cusp() const { return !seq.empty(); }
    Int multiplicity() const { return seq.empty() ? 1 : seq.front(); }
};

/// A marked fiber (or plane line) with its intersection pattern with
/// the curve, e.g. T.C = 4p + r as {(p,4),(r,1)}. The pattern always
/// sums to b (fiber degree) or d (line degree).
struct FiberMark {
    std::string id;
    std::vector<std::pair<std::string, Int>> pattern;
    std::optional<std::string> on_special_section;

    Int pattern_sum() const {
        Int s = 0;
        for (const auto& [p, c] : pattern) s += c;
        return s;
    }

    Int order_at(const std::string& point) const {
        for (const auto& [p, c] : pattern)
            if (p == point) return c;
        return 0;
    }
};

struct MoveError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The unit the birational engine transforms: a curve on F_e (or a
/// plane curve), its marked points and fibers, and - when known - the
/// distribution of E.C over the curve.
class CurveState {
  public:
    static CurveState plane(Int degree, std::vector<MultiplicitySequence> config) {
        CurveState st;
        st.plane_ = true;
        st.degree_ = degree;
        st.register_config(config);
        st.check_genus("start");
        return st;
    }

    static CurveState surface(Int e, DivisorClass cls, std::vector<MultiplicitySequence> config) {
        CurveState st;
        st.plane_ = false;
        st.e_ = e;
        st.cls_ = cls;
        st.register_config(config);
        if (e >= 1) st.e_contacts_.reset();  // unknown unless established by a move
        st.check_genus("start");
        return st;
    }

    bool is_plane() const { return plane_; }
    Int degree() const { return degree_; }
    Int e() const { return e_; }
    DivisorClass cls() const { return cls_; }
    const std::vector<CurvePoint>& points() const { return points_; }
    const std::vector<FiberMark>& marks() const { return marks_; }
    const std::optional<std::vector<std::pair<std::string, Int>>>& e_contacts() const {
        return e_contacts_;
    }

    std::vector<MultiplicitySequence> config() const {
        std::vector<MultiplicitySequence> out;
        for (const auto& p : points_)
            if (p.is_cusp()) out.emplace_back(p.seq);
        std::sort(out.begin(), out.end(),
                  [](const auto& x, const auto& y) { return x.entries() > y.entries(); });
        return out;
    }

    CurveSpec spec(bool kodaira = false) const {
        if (plane_) throw MoveError("plane state has no surface spec");
        return CurveSpec(SurfaceId(e_), cls_, config(), kodaira);
    }

    std::string describe() const {
        std::ostringstream os;
        if (plane_)
            os << "plane degree " << degree_;
        else
            os << "F" << e_ << " type (" << cls_.a << "," << cls_.b << ")";
        auto cfg = config();
        if (!cfg.empty()) os << " config " << format_config(cfg);
        return os.str();
    }

    /// Curve degree of a fiber/line in the current state.
    Int mark_budget() const { return plane_ ? degree_ : cls_.b; }

    /// Local multiplicity of the curve at a named point: cusp head,
    /// 1 for registered smooth points, 0 for unregistered (off-curve).
    Int multiplicity_of(const std::string& id) const {
        const CurvePoint* p = find_point(id);
        return p ? p->multiplicity() : 0;
    }

    /// Declares a fiber (line) mark with asserted intersection pattern.
    /// Fresh pattern point ids are registered as smooth curve points.
    void add_mark(FiberMark mark) {
        if (mark.pattern_sum() != mark_budget())
            throw MoveError("mark " + mark.id + ": pattern sums to " +
                            std::to_string(mark.pattern_sum()) + ", expected " +
                            std::to_string(mark_budget()));
        for (auto& m : marks_)
            if (m.id == mark.id) throw MoveError("duplicate mark id " + mark.id);
        for (const auto& [pid, order] : mark.pattern) {
            if (order < 1) throw MoveError("mark " + mark.id + ": contact orders must be >= 1");
            const CurvePoint* p = find_point(pid);
            if (p) {
                if (order < p->multiplicity())
                    throw MoveError("mark " + mark.id + ": contact " + std::to_string(order) +
                                    " at " + pid + " is below its multiplicity");
            } else {
                points_.push_back({pid, {}});
            }
        }
        marks_.push_back(std::move(mark));
    }

    /// Options describing where a move's center sits.
    struct PointSpec {
        std::string id;
        bool on_e = false;         // asserted on the special section
        bool off_curve = false;    // asserted off the curve (fresh ids only)
        std::optional<std::string> on_mark;  // asserted on this fiber/line
    };

    /// Plane -> F_1 by blowing up one point. A cusp center loses its
    /// head entry; only lines through the center survive as fibers.
    void from_plane(const PointSpec& x) {
        if (!plane_) throw MoveError("from_plane requires plane mode");
        ensure_point_consistent(x);
        Int m = multiplicity_of(x.id);
        if (m > degree_) throw MoveError("center multiplicity exceeds degree");
        Int d = degree_;
        drop_head(x.id);
        std::vector<FiberMark> kept;
        for (auto& mark : marks_) {
            Int c = mark.order_at(x.id);
            bool through = c > 0 || (x.on_mark && *x.on_mark == mark.id);
            if (!through) continue;  // no longer a fiber after the blow-up
            if (c > 0) {
                if (c < m) throw MoveError("mark " + mark.id + " has contact below multiplicity at " + x.id);
                set_order(mark, x.id, c - m);
            }
            kept.push_back(std::move(mark));
        }
        marks_ = std::move(kept);
        plane_ = false;
        e_ = 1;
        cls_ = DivisorClass{m, d - m};
        e_contacts_.emplace();
        if (m >= 1) e_contacts_->push_back({x.id, m});
        finish_move("from_plane at " + x.id);
    }

    /// F_1 -> plane by contracting the special section. Requires E.C
    /// concentrated in at most one point; a concentration of order
    /// n >= 2 prepends n to that point's sequence. Marks do not
    /// survive (their plane contact at the blown-down point is not
    /// derivable here).
    void to_plane() {
        if (plane_ || e_ != 1) throw MoveError("to_plane requires a state on F_1");
        if (pending_) throw MoveError("to_plane with a pending blow-up");
        if (!e_contacts_) throw MoveError("E.C distribution unknown; cannot contract E");
        if (e_contacts_->size() > 1)
            throw MoveError("E meets C in " + std::to_string(e_contacts_->size()) +
                            " points; contraction would create a non-cuspidal singularity");
        Int d = cls_.a + cls_.b;
        if (!e_contacts_->empty()) {
            auto [pid, n] = e_contacts_->front();
            if (n != cls_.a) throw MoveError("E.C bookkeeping out of sync");
            if (n >= 2) prepend(pid, n);
        } else if (cls_.a != 0) {
            throw MoveError("E.C bookkeeping out of sync");
        }
        plane_ = true;
        degree_ = d;
        marks_.clear();
        e_contacts_.reset();
        finish_move("to_plane");
    }

    /// Elementary transformation: blow up x on the fiber T, contract
    /// the strict transform of T. x on E moves F_e -> F_{e+1}; off E,
    /// F_e -> F_{e-1} (F_0 always goes to F_1).
    void elm(const std::string& fiber, const PointSpec& x) {
        blowup(x);
        contract(fiber);
    }

    /// First half of an elm; must be followed by contract().
    void blowup(const PointSpec& x) {
        if (plane_) throw MoveError("use from_plane to blow up a plane point");
        if (pending_) throw MoveError("blow-up already pending");
        ensure_point_consistent(x);
        if (x.on_e && e_ == 0) throw MoveError("F_0 has no special section");
        pending_ = Pending{x, multiplicity_of(x.id)};
    }

    /// Second half of an elm: contracts the named fiber's strict
    /// transform through the pending blown-up point. All residual
    /// contact of the fiber with the curve must concentrate in one
    /// point; order n >= 2 prepends n there.
    void contract(const std::string& fiber) {
        if (!pending_) throw MoveError("contract " + fiber + " without a pending blow-up");
        Pending pend = *pending_;
        pending_.reset();
        const FiberMark* tp = find_mark(fiber);
        if (!tp) throw MoveError("unknown fiber " + fiber);
        FiberMark t = *tp;
        const PointSpec& x = pend.x;
        Int m = pend.m;
        if (find_point(x.id) && m > 0 && t.order_at(x.id) == 0)
            throw MoveError(x.id + " does not lie on fiber " + fiber);
        bool up = x.on_e || e_ == 0;
        if (!up && e_ < 1) throw MoveError("cannot lower e below 0");

        // residual contact of T' with C' after the blow-up at x
        std::vector<std::pair<std::string, Int>> residual;
        for (const auto& [pid, c] : t.pattern) {
            Int rc = (pid == x.id) ? c - m : c;
            if (rc < 0) throw MoveError("contact below multiplicity at " + pid);
            if (rc > 0) residual.push_back({pid, rc});
        }
        if (residual.size() > 1) {
            std::string where;
            for (const auto& [pid, c] : residual) where += " " + pid;
            throw MoveError("residual contact of " + fiber + " spread over" + where +
                            "; contraction would create a non-cuspidal singularity");
        }

        drop_head(x.id);
        std::string survivor;
        Int n = cls_.b - m;
        if (!residual.empty()) {
            survivor = residual.front().first;
            if (residual.front().second != n) throw MoveError("contact bookkeeping out of sync");
            if (n >= 2) prepend(survivor, n);
        }

        Int old_ledger = 2 * cls_.a * cls_.b + cls_.b * cls_.b * e_;
        Int new_a = up ? cls_.a - m : cls_.a + cls_.b - m;
        Int new_e = up ? e_ + 1 : e_ - 1;
        if (e_ == 0) new_e = 1;
        if (new_a < 0) throw MoveError("move would produce a class with a < 0");

        // E.C bookkeeping: unknown after leaving F_0 (the new special
        // section is unrelated to the old rulings), dropped on F_0.
        if (new_e == 0 || (new_e == 1 && e_ == 0)) {
            e_contacts_.reset();
        } else if (e_contacts_) {
            if (up)
                adjust_contact(x.id, -m);
            else if (n >= 1)
                adjust_contact(survivor, n);
        }

        cls_ = DivisorClass{new_a, cls_.b};
        e_ = new_e;

        // self-intersection ledger: changes by n^2 - m^2
        Int new_ledger = 2 * cls_.a * cls_.b + cls_.b * cls_.b * e_;
        if (new_ledger - old_ledger != n * n - m * m)
            throw std::logic_error("self-intersection ledger breach in elm");

        // the other fibers are untouched; the new fiber through the
        // contracted point replaces T under the same id
        remove_mark(fiber);
        FiberMark fresh{fiber, {}, std::nullopt};
        if (m >= 1) fresh.pattern.push_back({x.id, m});
        if (n >= 1) {
            if (m >= 1 && survivor == x.id)
                fresh.pattern.front().second += n;
            else
                fresh.pattern.push_back({survivor, n});
        }
        if (!up && new_e >= 1 && !survivor.empty()) fresh.on_special_section = survivor;
        if (fresh.pattern_sum() != cls_.b) throw std::logic_error("new fiber pattern out of sync");
        marks_.push_back(std::move(fresh));
        finish_move("elm " + fiber + " at " + x.id);
    }

    /// F_0 ruling swap. Fiber marks refer to the other ruling after
    /// the swap, so they are dropped.
    void swap_rulings() {
        if (plane_ || e_ != 0) throw MoveError("swap_rulings requires F_0");
        if (pending_) throw MoveError("swap_rulings with a pending blow-up");
        cls_ = DivisorClass{cls_.b, cls_.a};
        marks_.clear();
        finish_move("swap_rulings");
    }

  private:
    struct Pending {
        PointSpec x;
        Int m;
    };

    bool plane_ = false;
    Int degree_ = 0;
    Int e_ = 0;
    DivisorClass cls_{0, 1};
    std::vector<CurvePoint> points_;
    std::vector<FiberMark> marks_;
    std::optional<std::vector<std::pair<std::string, Int>>> e_contacts_ = std::nullopt;
    std::optional<Pending> pending_;

    void register_config(const std::vector<MultiplicitySequence>& config) {
        for (std::size_t i = 0; i < config.size(); ++i)
            points_.push_back({"c" + std::to_string(i + 1), config[i].entries()});
    }

    const CurvePoint* find_point(const std::string& id) const {
        for (const auto& p : points_)
            if (p.id == id) return &p;
        return nullptr;
    }

    CurvePoint* find_point(const std::string& id) {
        for (auto& p : points_)
            if (p.id == id) return &p;
        return nullptr;
    }

    const FiberMark* find_mark(const std::string& id) const {
        for (const auto& m : marks_)
            if (m.id == id) return &m;
        return nullptr;
    }

    void remove_mark(const std::string& id) {
        std::erase_if(marks_, [&](const FiberMark& m) { return m.id == id; });
    }

    static void set_order(FiberMark& mark, const std::string& pid, Int order) {
        if (order == 0)
            std::erase_if(mark.pattern, [&](const auto& pr) { return pr.first == pid; });
        else
            for (auto& [p, c] : mark.pattern)
                if (p == pid) c = order;
    }

    void ensure_point_consistent(const PointSpec& x) const {
        const CurvePoint* p = find_point(x.id);
        if (x.off_curve && p)
            throw MoveError(x.id + " is declared off the curve but is a marked curve point");
        if (e_contacts_ && !plane_) {
            bool listed = false;
            for (const auto& [pid, c] : *e_contacts_)
                if (pid == x.id) listed = true;
            if (!x.on_e && listed)
                throw MoveError(x.id + " lies on the special section; move must declare onE");
            if (x.on_e && p && !listed)
                throw MoveError(x.id + " is declared on E but E.C avoids it");
        }
    }

    void drop_head(const std::string& id) {
        CurvePoint* p = find_point(id);
        if (!p || p->seq.empty()) return;
        p->seq.erase(p->seq.begin());
        if (!p->seq.empty())
            if (auto v = check_sequence(p->seq))
                throw MoveError("sequence at " + id + " invalid after blow-up: " + v->message);
    }

    void prepend(const std::string& id, Int n) {
        CurvePoint* p = find_point(id);
        if (!p) {
            points_.push_back({id, {n}});
            return;
        }
        p->seq.insert(p->seq.begin(), n);
        if (auto v = check_sequence(p->seq))
            throw MoveError("sequence at " + id + " invalid after contraction: " + v->message);
    }

    void adjust_contact(const std::string& id, Int by) {
        if (!e_contacts_ || by == 0) return;
        for (auto& [pid, c] : *e_contacts_) {
            if (pid == id) {
                c += by;
                if (c < 0) throw MoveError("E.C bookkeeping out of sync at " + id);
                std::erase_if(*e_contacts_, [](const auto& pr) { return pr.second == 0; });
                return;
            }
        }
        if (by > 0) e_contacts_->push_back({id, by});
    }

    /// Every move must preserve geometric genus 0 and mark budgets.
    void check_genus(const std::string& what) const {
        Int g;
        if (plane_) {
            g = (degree_ - 1) * (degree_ - 2) / 2;
        } else {
            if (!is_curve_class(cls_)) throw MoveError(what + ": class is not a curve class");
            g = arithmetic_genus(SurfaceId(e_), cls_);
        }
        for (const auto& p : points_)
            for (Int m : p.seq) g -= m * (m - 1) / 2;
        if (g != 0) throw MoveError(what + ": state has geometric genus " + std::to_string(g));
        for (const auto& m : marks_)
            if (m.pattern_sum() != mark_budget())
                throw MoveError(what + ": mark " + m.id + " no longer sums to the fiber degree");
        if (e_contacts_) {
            Int total = 0;
            for (const auto& [pid, c] : *e_contacts_) total += c;
            if (!plane_ && total != cls_.a) throw MoveError(what + ": E.C bookkeeping out of sync");
        }
    }

    void finish_move(const std::string& what) { check_genus(what); }
};

}  // namespace cuspidal
