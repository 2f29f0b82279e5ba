#include "bnalg/parameters.hpp"

namespace bnalg {

ParameterAssignment<Rational> sample_parameters(const NetworkSpec& net, std::uint64_t seed) {
    // mt19937_64 is fully specified by the standard; the modulo draw keeps the
    // stream identical across platforms (std::uniform_int_distribution is not).
    std::mt19937_64 gen(seed);
    auto draw = [&gen]() -> unsigned long { return 1 + gen() % 1000; };

    ParameterAssignment<Rational> out;
    out.node_tables.resize(net.node_count());
    for (std::size_t i = 0; i < net.node_count(); ++i) {
        auto& ct = out.node_tables[i];
        ct.rows.resize(parent_config_count(net, i));
        for (auto& row : ct.rows) {
            std::vector<unsigned long> nums(net.node(i).card);
            unsigned long total = 0;
            for (auto& n : nums) {
                n = draw();
                total += n;
            }
            row.reserve(nums.size());
            for (unsigned long n : nums) {
                Rational v(n, total);
                v.canonicalize();
                row.push_back(std::move(v));
            }
        }
    }
    return out;
}

}  // namespace bnalg
