#include "markoff/groups.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <istream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "markoff/arith.hpp"

namespace markoff::groups {

namespace {

Mat2 mat_mul(const Mat2& f, const Mat2& g) {
    std::uint64_t p = f.p;
    auto mm = [&](std::uint64_t x) { return static_cast<std::uint32_t>(x % p); };
    return {f.p, mm(std::uint64_t(f.a) * g.a + std::uint64_t(f.b) * g.c),
            mm(std::uint64_t(f.a) * g.b + std::uint64_t(f.b) * g.d),
            mm(std::uint64_t(f.c) * g.a + std::uint64_t(f.d) * g.c),
            mm(std::uint64_t(f.c) * g.b + std::uint64_t(f.d) * g.d)};
}

std::uint32_t mat_det(const Mat2& m) {
    std::uint64_t p = m.p;
    return static_cast<std::uint32_t>(
        ((std::uint64_t(m.a) * m.d % p) + p - (std::uint64_t(m.b) * m.c % p)) % p);
}

Mat2 mat_inv(const Mat2& m) {
    arith::PrimeField F(m.p);
    std::uint32_t det = mat_det(m);
    if (det == 0) throw std::invalid_argument("matrix generator is not invertible");
    std::uint32_t di = F.inv(det);
    return {m.p, F.mul(m.d, di), F.mul(F.neg(m.b), di), F.mul(F.neg(m.c), di), F.mul(m.a, di)};
}

}  // namespace

Label compose(const Label& f, const Label& g) {
    if (f.index() != g.index()) throw std::invalid_argument("compose: mixed label kinds");
    if (std::holds_alternative<Perm>(f)) {
        const Perm& a = std::get<Perm>(f);
        const Perm& b = std::get<Perm>(g);
        if (a.img.size() != b.img.size()) throw std::invalid_argument("compose: domain mismatch");
        Perm r;
        r.img.resize(a.img.size());
        for (std::size_t i = 0; i < a.img.size(); ++i) r.img[i] = a.img[b.img[i]];
        return r;
    }
    const Mat2& a = std::get<Mat2>(f);
    const Mat2& b = std::get<Mat2>(g);
    if (a.p != b.p) throw std::invalid_argument("compose: modulus mismatch");
    return mat_mul(a, b);
}

Label invert(const Label& f) {
    if (std::holds_alternative<Perm>(f)) {
        const Perm& a = std::get<Perm>(f);
        Perm r;
        r.img.resize(a.img.size());
        for (std::size_t i = 0; i < a.img.size(); ++i) r.img[a.img[i]] = static_cast<std::uint16_t>(i);
        return r;
    }
    return mat_inv(std::get<Mat2>(f));
}

std::string serialize(const Label& f) {
    std::string s;
    auto push32 = [&](std::uint32_t v) {
        for (int i = 3; i >= 0; --i) s.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
    };
    if (std::holds_alternative<Perm>(f)) {
        const Perm& a = std::get<Perm>(f);
        s.push_back('P');
        for (std::uint16_t v : a.img) {
            s.push_back(static_cast<char>(v >> 8));
            s.push_back(static_cast<char>(v & 0xff));
        }
    } else {
        const Mat2& m = std::get<Mat2>(f);
        s.push_back('M');
        push32(m.p);
        push32(m.a);
        push32(m.b);
        push32(m.c);
        push32(m.d);
    }
    return s;
}

FiniteGroup FiniteGroup::closure(std::vector<Label> generators, std::size_t cap) {
    if (generators.empty()) {
        Perm e;
        e.img = {0};
        FiniteGroup G;
        G.elements_ = {Label(e)};
        G.finalize();
        return G;
    }
    Label id = compose(generators[0], invert(generators[0]));
    std::map<std::string, Label> seen;
    seen.emplace(serialize(id), id);
    for (const Label& g : generators) {
        (void)invert(g);  // rejects non-invertible matrix generators
        seen.emplace(serialize(g), g);
    }
    std::deque<Label> queue;
    for (auto& [k, v] : seen) queue.push_back(v);
    while (!queue.empty()) {
        Label x = queue.front();
        queue.pop_front();
        for (const Label& g : generators) {
            Label y = compose(x, g);
            auto [it, fresh] = seen.emplace(serialize(y), y);
            if (fresh) {
                if (seen.size() > cap) throw std::runtime_error("FiniteGroup::closure: cap exceeded");
                queue.push_back(y);
            }
        }
    }
    FiniteGroup G;
    for (auto& [k, v] : seen) G.elements_.push_back(v);
    G.gen_labels_ = std::move(generators);
    G.finalize();
    return G;
}

FiniteGroup FiniteGroup::from_elements(std::vector<Label> elements, std::vector<Label> generators) {
    FiniteGroup G;
    G.elements_ = std::move(elements);
    G.gen_labels_ = std::move(generators);
    G.finalize();
    return G;
}

void FiniteGroup::finalize() {
    std::sort(elements_.begin(), elements_.end(),
              [](const Label& a, const Label& b) { return serialize(a) < serialize(b); });
    serials_.reserve(elements_.size());
    for (const Label& e : elements_) serials_.push_back(serialize(e));
    if (std::adjacent_find(serials_.begin(), serials_.end()) != serials_.end())
        throw std::logic_error("FiniteGroup: duplicate elements");
    lookup_.reserve(elements_.size() * 2);
    for (std::uint32_t i = 0; i < elements_.size(); ++i) lookup_.emplace(serials_[i], i);

    const std::size_t n = elements_.size();
    id_ = index_of(compose(elements_[0], invert(elements_[0])));
    for (const Label& g : gen_labels_) gens_.push_back(index_of(g));
    std::vector<std::uint32_t> conjugators = gens_;
    if (conjugators.empty()) conjugators.push_back(id_);

    if (n <= kDenseLimit) {
        table_.assign(n * n, 0);
        for (std::uint32_t i = 0; i < n; ++i)
            for (std::uint32_t j = 0; j < n; ++j)
                table_[std::size_t(i) * n + j] =
                    static_cast<std::uint16_t>(index_of(compose(elements_[i], elements_[j])));
    }

    inv_.resize(n);
    for (std::uint32_t i = 0; i < n; ++i) inv_[i] = index_of(invert(elements_[i]));
    for (std::uint32_t i = 0; i < n; ++i) {
        if (mul(i, inv_[i]) != id_ || mul(id_, i) != i)
            throw std::logic_error("FiniteGroup: group axioms violated");
    }
    std::mt19937 rng(12345);
    for (int trial = 0; trial < 64; ++trial) {
        std::uint32_t a = rng() % n, b = rng() % n, c = rng() % n;
        if (mul(mul(a, b), c) != mul(a, mul(b, c)))
            throw std::logic_error("FiniteGroup: associativity violated");
    }

    // Element orders via Lagrange: strip primes from |G|.
    order_.resize(n);
    auto pw = [&](std::uint32_t x, std::uint64_t e) {
        std::uint32_t r = id_;
        while (e) {
            if (e & 1) r = mul(r, x);
            x = mul(x, x);
            e >>= 1;
        }
        return r;
    };
    auto factors = arith::factorize(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        std::uint64_t ord = n;
        for (auto [q, e] : factors) {
            for (int k = 0; k < e && ord % q == 0; ++k) {
                if (pw(i, ord / q) == id_)
                    ord /= q;
                else
                    break;
            }
        }
        order_[i] = ord;
    }

    // Conjugacy classes: BFS under conjugation by the generators.  The seed
    // of each class is the least unvisited index, hence the canonical rep.
    class_id_.assign(n, UINT32_MAX);
    conj_to_rep_.assign(n, id_);
    for (std::uint32_t seed = 0; seed < n; ++seed) {
        if (class_id_[seed] != UINT32_MAX) continue;
        std::uint32_t cls = static_cast<std::uint32_t>(class_reps_.size());
        class_reps_.push_back(seed);
        class_id_[seed] = cls;
        // w satisfies x = w * rep * w^-1, so conj_to_rep(x) = w^-1.
        std::deque<std::pair<std::uint32_t, std::uint32_t>> queue;
        queue.emplace_back(seed, id_);
        while (!queue.empty()) {
            auto [x, w] = queue.front();
            queue.pop_front();
            for (std::uint32_t s : conjugators) {
                std::uint32_t y = conj(s, x);
                if (class_id_[y] == UINT32_MAX) {
                    class_id_[y] = cls;
                    std::uint32_t wy = mul(s, w);
                    conj_to_rep_[y] = inv_[wy];
                    queue.emplace_back(y, wy);
                }
            }
        }
    }

    for (std::uint32_t i = 0; i < n; ++i) {
        bool central = true;
        for (std::uint32_t g : conjugators)
            if (mul(i, g) != mul(g, i)) { central = false; break; }
        if (central) center_.push_back(i);
    }
}

std::uint32_t FiniteGroup::mul(std::uint32_t i, std::uint32_t j) const {
    if (!table_.empty()) return table_[std::size_t(i) * elements_.size() + j];
    return index_of(compose(elements_[i], elements_[j]));
}

std::uint32_t FiniteGroup::index_of(const Label& l) const {
    auto it = lookup_.find(serialize(l));
    if (it == lookup_.end()) throw std::invalid_argument("index_of: element not in group");
    return it->second;
}

std::vector<std::uint32_t> FiniteGroup::class_members(std::uint32_t cls) const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 0; i < size(); ++i)
        if (class_id_[i] == cls) out.push_back(i);
    return out;
}

std::vector<std::uint32_t> FiniteGroup::centralizer(std::uint32_t g) const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 0; i < size(); ++i)
        if (mul(i, g) == mul(g, i)) out.push_back(i);
    return out;
}

std::vector<std::uint32_t> FiniteGroup::centralizer_of_set(const std::vector<std::uint32_t>& gs) const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 0; i < size(); ++i) {
        bool ok = true;
        for (std::uint32_t g : gs)
            if (mul(i, g) != mul(g, i)) { ok = false; break; }
        if (ok) out.push_back(i);
    }
    return out;
}

std::vector<std::uint32_t> FiniteGroup::subgroup_of(const std::vector<std::uint32_t>& gens) const {
    std::vector<std::uint8_t> seen(size(), 0);
    std::vector<std::uint32_t> stack{id_};
    seen[id_] = 1;
    std::vector<std::uint32_t> out;
    while (!stack.empty()) {
        std::uint32_t x = stack.back();
        stack.pop_back();
        out.push_back(x);
        for (std::uint32_t g : gens) {
            std::uint32_t y = mul(x, g);
            if (!seen[y]) {
                seen[y] = 1;
                stack.push_back(y);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::uint32_t> FiniteGroup::subgroup(std::uint32_t g, std::uint32_t h) const {
    return subgroup_of({g, h});
}

bool FiniteGroup::is_generating_pair(std::uint32_t g, std::uint32_t h) const {
    return subgroup(g, h).size() == size();
}

std::vector<std::uint32_t> FiniteGroup::cyclic(std::uint32_t g) const {
    return subgroup_of({g});
}

std::vector<std::uint32_t> FiniteGroup::normal_closure(std::uint32_t g) const {
    return subgroup_of(class_members(class_of(g)));
}

bool FiniteGroup::is_simple() const {
    if (size() == 1) return false;
    for (std::uint32_t cls = 0; cls < num_classes(); ++cls) {
        std::uint32_t rep = class_rep(cls);
        if (rep == id_) continue;
        if (normal_closure(rep).size() != size()) return false;
    }
    return true;
}

int FiniteGroup::max_proper_normal_valuation(std::uint64_t ell) const {
    // Every normal subgroup is the join of the single-class normal closures
    // it contains, so saturating joins over the proper closures finds the
    // whole lattice of proper normal subgroups.
    std::set<std::vector<std::uint32_t>> normals;
    normals.insert({id_});
    std::deque<std::vector<std::uint32_t>> queue;
    for (std::uint32_t cls = 0; cls < num_classes(); ++cls) {
        auto nc = normal_closure(class_rep(cls));
        if (nc.size() < size() && normals.insert(nc).second) queue.push_back(nc);
    }
    while (!queue.empty()) {
        auto cur = queue.front();
        queue.pop_front();
        std::vector<std::vector<std::uint32_t>> snapshot(normals.begin(), normals.end());
        for (const auto& base : snapshot) {
            std::vector<std::uint32_t> both = cur;
            both.insert(both.end(), base.begin(), base.end());
            std::sort(both.begin(), both.end());
            both.erase(std::unique(both.begin(), both.end()), both.end());
            auto join = subgroup_of(both);
            if (join.size() < size() && normals.insert(join).second) queue.push_back(join);
        }
    }
    int best = 0;
    for (const auto& nsub : normals)
        best = std::max(best, arith::l_valuation(ell, nsub.size()));
    return best;
}

namespace {

std::vector<Perm> parse_perm_lines(const std::vector<std::string>& lines) {
    std::size_t npoints = 0;
    std::vector<std::vector<std::vector<int>>> cycles_per_line;
    for (const std::string& body : lines) {
        std::vector<std::vector<int>> cycles;
        std::size_t i = 0;
        while (i < body.size()) {
            if (body[i] == '(') {
                std::vector<int> cyc;
                ++i;
                while (i < body.size() && body[i] != ')') {
                    if (std::isdigit(static_cast<unsigned char>(body[i]))) {
                        int v = 0;
                        while (i < body.size() && std::isdigit(static_cast<unsigned char>(body[i]))) {
                            v = v * 10 + (body[i] - '0');
                            ++i;
                        }
                        if (v == 0) throw std::invalid_argument("group spec: points are 1-based");
                        cyc.push_back(v);
                        npoints = std::max<std::size_t>(npoints, v);
                    } else {
                        ++i;
                    }
                }
                if (i == body.size()) throw std::invalid_argument("group spec: unterminated cycle");
                ++i;
                if (!cyc.empty()) cycles.push_back(cyc);
            } else {
                ++i;
            }
        }
        cycles_per_line.push_back(std::move(cycles));
    }
    if (npoints == 0) throw std::invalid_argument("group spec: empty permutation");
    std::vector<Perm> out;
    for (const auto& cycles : cycles_per_line) {
        Perm p;
        p.img.resize(npoints);
        for (std::size_t i = 0; i < npoints; ++i) p.img[i] = static_cast<std::uint16_t>(i);
        for (const auto& cyc : cycles) {
            for (std::size_t i = 0; i < cyc.size(); ++i) {
                int from = cyc[i] - 1;
                int to = cyc[(i + 1) % cyc.size()] - 1;
                p.img[from] = static_cast<std::uint16_t>(to);
            }
        }
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace

FiniteGroup parse_group_spec(std::istream& in) {
    std::vector<std::string> perm_lines;
    std::vector<Mat2> mats;
    std::string line;
    while (std::getline(in, line)) {
        std::size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        std::string body = line.substr(start);
        while (!body.empty() && (body.back() == '\r' || body.back() == ' ')) body.pop_back();
        if (body.empty()) continue;
        if (body.rfind("perm:", 0) == 0) {
            perm_lines.push_back(body.substr(5));
        } else if (body.rfind("mat", 0) == 0) {
            std::istringstream ss(body.substr(3));
            std::int64_t p, a, b, c, d;
            if (!(ss >> p >> a >> b >> c >> d))
                throw std::invalid_argument("group spec: bad mat line: " + body);
            arith::PrimeField F(static_cast<std::uint32_t>(p));
            mats.push_back({F.p(), F.reduce(a), F.reduce(b), F.reduce(c), F.reduce(d)});
        } else {
            throw std::invalid_argument("group spec: unrecognized line: " + body);
        }
    }
    if (!perm_lines.empty() && !mats.empty())
        throw std::invalid_argument("group spec: cannot mix perm and mat generators");
    std::vector<Label> gens;
    if (!perm_lines.empty())
        for (const Perm& p : parse_perm_lines(perm_lines)) gens.push_back(p);
    for (const Mat2& m : mats) gens.push_back(m);
    if (gens.empty()) throw std::invalid_argument("group spec: no generators");
    return FiniteGroup::closure(std::move(gens));
}

FiniteGroup load_group_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open group spec: " + path);
    return parse_group_spec(in);
}

FiniteGroup sl2(std::uint32_t p) {
    arith::PrimeField F(p);
    std::vector<Label> elems;
    elems.reserve(std::size_t(p) * (p * p - 1));
    for (std::uint32_t a = 1; a < p; ++a) {
        std::uint32_t ai = F.inv(a);
        for (std::uint32_t b = 0; b < p; ++b)
            for (std::uint32_t c = 0; c < p; ++c)
                elems.push_back(Mat2{p, a, b, c, F.mul(F.add(1, F.mul(b, c)), ai)});
    }
    for (std::uint32_t b = 1; b < p; ++b) {
        std::uint32_t c = F.neg(F.inv(b));
        for (std::uint32_t d = 0; d < p; ++d) elems.push_back(Mat2{p, 0, b, c, d});
    }
    if (elems.size() != std::size_t(p) * (p * p - 1)) throw std::logic_error("sl2: wrong order");
    std::vector<Label> gens{Mat2{p, 1, 1, 0, 1}, Mat2{p, 1, 0, 1, 1}};
    return FiniteGroup::from_elements(std::move(elems), std::move(gens));
}

FiniteGroup dihedral(std::uint32_t k) {
    if (k < 2) throw std::invalid_argument("dihedral: k >= 2 required");
    Perm rot, refl;
    rot.img.resize(k);
    refl.img.resize(k);
    for (std::uint32_t i = 0; i < k; ++i) {
        rot.img[i] = static_cast<std::uint16_t>((i + 1) % k);
        refl.img[i] = static_cast<std::uint16_t>((k - i) % k);
    }
    return FiniteGroup::closure({rot, refl});
}

std::vector<std::uint32_t> nonsquare_det_twist(const FiniteGroup& G) {
    const Mat2* probe = std::get_if<Mat2>(&G.label(0));
    if (!probe) throw std::invalid_argument("nonsquare_det_twist: matrix group required");
    arith::PrimeField F(probe->p);
    std::uint32_t r = F.least_nonresidue();
    std::uint32_t ri = F.inv(r);
    std::vector<std::uint32_t> twist(G.size());
    for (std::uint32_t i = 0; i < G.size(); ++i) {
        const Mat2& m = std::get<Mat2>(G.label(i));
        // diag(r, 1) * m * diag(r, 1)^-1
        twist[i] = G.index_of(Mat2{m.p, m.a, F.mul(r, m.b), F.mul(ri, m.c), m.d});
    }
    return twist;
}

}  // namespace markoff::groups
