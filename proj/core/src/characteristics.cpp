#include "hypertheta/characteristics.hpp"

#include <algorithm>
#include <sstream>

namespace hypertheta {

Characteristic::Characteristic(int genus)
    : eps_(static_cast<std::size_t>(genus), 0), eps_prime_(static_cast<std::size_t>(genus), 0) {}

Characteristic::Characteristic(std::vector<std::uint8_t> eps, std::vector<std::uint8_t> eps_prime)
    : eps_(std::move(eps)), eps_prime_(std::move(eps_prime)) {
    if (eps_.size() != eps_prime_.size()) {
        throw Error(ErrorCode::InvalidArgument, "characteristic rows differ in length");
    }
    for (auto& b : eps_) b &= 1;
    for (auto& b : eps_prime_) b &= 1;
}

bool Characteristic::is_zero() const {
    return std::all_of(eps_.begin(), eps_.end(), [](auto b) { return b == 0; }) &&
           std::all_of(eps_prime_.begin(), eps_prime_.end(), [](auto b) { return b == 0; });
}

int Characteristic::dot() const {
    int s = 0;
    for (std::size_t i = 0; i < eps_.size(); ++i) s += eps_[i] * eps_prime_[i];
    return s % 2;
}

std::string Characteristic::to_string() const {
    std::string s;
    for (auto b : eps_prime_) s += static_cast<char>('0' + b);
    s += '/';
    for (auto b : eps_) s += static_cast<char>('0' + b);
    return s;
}

Characteristic Characteristic::from_string(const std::string& text) {
    const auto slash = text.find('/');
    if (slash == std::string::npos) throw Error(ErrorCode::InvalidArgument, "characteristic needs 'top/bottom'");
    const std::string top = text.substr(0, slash), bottom = text.substr(slash + 1);
    if (top.size() != bottom.size() || top.empty()) {
        throw Error(ErrorCode::InvalidArgument, "characteristic rows differ in length");
    }
    std::vector<std::uint8_t> e, ep;
    for (char ch : top) {
        if (ch != '0' && ch != '1') throw Error(ErrorCode::InvalidArgument, "characteristic bits must be 0/1");
        ep.push_back(static_cast<std::uint8_t>(ch - '0'));
    }
    for (char ch : bottom) {
        if (ch != '0' && ch != '1') throw Error(ErrorCode::InvalidArgument, "characteristic bits must be 0/1");
        e.push_back(static_cast<std::uint8_t>(ch - '0'));
    }
    return Characteristic(e, ep);
}

Characteristic Characteristic::operator+(const Characteristic& other) const {
    if (other.genus() != genus()) throw Error(ErrorCode::InvalidArgument, "genus mismatch");
    std::vector<std::uint8_t> e(eps_.size()), ep(eps_.size());
    for (std::size_t i = 0; i < eps_.size(); ++i) {
        e[i] = eps_[i] ^ other.eps_[i];
        ep[i] = eps_prime_[i] ^ other.eps_prime_[i];
    }
    return Characteristic(e, ep);
}

const char* parity_name(Parity p) { return p == Parity::Even ? "even" : "odd"; }

Parity parity(const Characteristic& c) { return c.dot() == 0 ? Parity::Even : Parity::Odd; }

Characteristic branch_point_characteristic(int genus, int k) {
    if (k < 1 || k > 2 * genus + 2) {
        throw Error(ErrorCode::InvalidArgument, "branch index " + std::to_string(k) + " out of range");
    }
    const auto g = static_cast<std::size_t>(genus);
    std::vector<std::uint8_t> e(g, 0), ep(g, 0);
    if (k == 2 * genus + 2) return Characteristic(e, ep);
    if (k == 2 * genus + 1) {
        std::fill(e.begin(), e.end(), 1);
        return Characteristic(e, ep);
    }
    const int col = (k + 1) / 2;  // 1-based column of the eps' unit entry
    ep[static_cast<std::size_t>(col - 1)] = 1;
    const int ones = (k % 2 == 1) ? col - 1 : col;
    for (int i = 0; i < ones; ++i) e[static_cast<std::size_t>(i)] = 1;
    return Characteristic(e, ep);
}

Characteristic riemann_constant_characteristic(int genus) {
    Characteristic k(genus);
    for (int i = 1; i <= genus; ++i) k = k + branch_point_characteristic(genus, 2 * i);
    return k;
}

Partition Partition::from_indices(int genus, std::vector<int> indices) {
    if (genus < 1) throw Error(ErrorCode::InvalidArgument, "genus must be positive");
    std::sort(indices.begin(), indices.end());
    if (std::adjacent_find(indices.begin(), indices.end()) != indices.end()) {
        throw Error(ErrorCode::InvalidArgument, "repeated partition index");
    }
    std::vector<int> finite;
    for (int i : indices) {
        if (i < 1 || i > 2 * genus + 2) {
            throw Error(ErrorCode::InvalidArgument, "partition index " + std::to_string(i) + " out of range");
        }
        if (i != 2 * genus + 2) finite.push_back(i);
    }
    if (static_cast<int>(finite.size()) > genus) {
        std::vector<int> comp;
        for (int i = 1; i <= 2 * genus + 1; ++i) {
            if (!std::binary_search(finite.begin(), finite.end(), i)) comp.push_back(i);
        }
        finite.swap(comp);
    }
    Partition p;
    p.genus_ = genus;
    p.finite_ = finite;
    return p;
}

Partition Partition::parse(int genus, const std::string& text) {
    std::string body;
    for (char ch : text) {
        if (ch == '{' || ch == '}' || ch == ' ') continue;
        body += ch;
    }
    std::vector<int> idx;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(item, &used);
        } catch (const std::exception&) {
            throw Error(ErrorCode::InvalidArgument, "bad partition entry '" + item + "'");
        }
        if (used != item.size()) throw Error(ErrorCode::InvalidArgument, "bad partition entry '" + item + "'");
        idx.push_back(v);
    }
    return from_indices(genus, idx);
}

std::vector<int> Partition::complement_finite() const {
    std::vector<int> comp;
    for (int i = 1; i <= 2 * genus_ + 1; ++i) {
        if (!std::binary_search(finite_.begin(), finite_.end(), i)) comp.push_back(i);
    }
    return comp;
}

std::string Partition::to_string() const {
    std::string s = "{";
    for (std::size_t i = 0; i < finite_.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(finite_[i]);
    }
    return s + "}";
}

Characteristic partition_characteristic(const Partition& p) {
    Characteristic c = riemann_constant_characteristic(p.genus());
    for (int i : p.finite_indices()) c = c + branch_point_characteristic(p.genus(), i);
    return c;
}

int max_multiplicity(int genus) { return (genus + 1) / 2; }

long long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

long long partition_count(int genus, int m) {
    if (m == 0) return binomial(2 * genus + 1, genus);
    if (m == 1) return binomial(2 * genus + 2, genus - 1);
    return binomial(2 * genus + 2, genus + 1 - 2 * m);
}

namespace {

void combinations(int n, int k, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == k) {
        out.push_back(cur);
        return;
    }
    for (int i = start; i <= n; ++i) {
        cur.push_back(i);
        combinations(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<Partition> enumerate_partitions(int genus, int m) {
    if (m < 0 || m > max_multiplicity(genus)) {
        throw Error(ErrorCode::MultiplicityOutOfRange,
                    "multiplicity " + std::to_string(m) + " not in 0.." + std::to_string(max_multiplicity(genus)));
    }
    std::vector<Partition> out;
    for (int dropped : {2 * m, 2 * m - 1}) {
        if (dropped < 0 || dropped > genus) continue;
        std::vector<std::vector<int>> sets;
        std::vector<int> cur;
        combinations(2 * genus + 1, genus - dropped, 1, cur, sets);
        for (auto& s : sets) out.push_back(Partition::from_indices(genus, s));
    }
    std::sort(out.begin(), out.end(), [](const Partition& a, const Partition& b) {
        if (a.finite_indices().size() != b.finite_indices().size()) {
            return a.finite_indices().size() > b.finite_indices().size();
        }
        return a.finite_indices() < b.finite_indices();
    });
    return out;
}

VectorC half_period(const Characteristic& c, const PeriodMatrices& pm) {
    const int g = c.genus();
    Eigen::VectorXd e(g), ep(g);
    for (int i = 0; i < g; ++i) {
        e(i) = c.eps()[static_cast<std::size_t>(i)];
        ep(i) = c.eps_prime()[static_cast<std::size_t>(i)];
    }
    return e.cast<cplx>() / 2.0 + pm.tau * ep.cast<cplx>() / 2.0;
}

}  // namespace hypertheta
