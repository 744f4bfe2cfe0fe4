#include <algorithm>
#include <filesystem>
#include <stdexcept>
#include <string>

#include "scdg/eval.hpp"
#include "scdg/grd.hpp"
#include "scdg/rng.hpp"

namespace scdg {

void SynthSpec::validate() const {
    if (family_count < 1 || members_per_family < 1 || benign_count < 1) {
        throw std::invalid_argument("synth spec counts must be >= 1");
    }
    if (!(edge_density >= 0.0 && edge_density <= 1.0) ||
        !(mutation_rate >= 0.0 && mutation_rate <= 1.0)) {
        throw std::invalid_argument("synth spec probabilities must lie in [0, 1]");
    }
    if (weight_min < 1 || weight_min > weight_max) {
        throw std::invalid_argument("synth spec requires 1 <= weight_min <= weight_max");
    }
}

namespace {

std::string zero_pad(int value, int width) {
    std::string s = std::to_string(value);
    while (int(s.size()) < width) s.insert(s.begin(), '0');
    return s;
}

SquareMatrix<std::uint32_t> draw_base(Rng& rng, std::size_t dim, const SynthSpec& spec) {
    SquareMatrix<std::uint32_t> base(dim);
    for (auto& cell : base.cells()) {
        if (rng.unit() < spec.edge_density) {
            cell = rng.range_u32(spec.weight_min, spec.weight_max);
        }
    }
    return base;
}

// Mutation resamples a cell from the base distribution: with mutation_rate 1
// every cell of every member is a fresh draw, so per-cell presence converges
// to edge_density and family coherence disappears; with rate 0 members are
// exact copies of the base.
SquareMatrix<std::uint32_t> mutate(const SquareMatrix<std::uint32_t>& base, Rng& rng,
                                   const SynthSpec& spec) {
    SquareMatrix<std::uint32_t> member = base;
    for (auto& cell : member.cells()) {
        if (spec.mutation_rate > 0.0 && rng.unit() < spec.mutation_rate) {
            cell = rng.unit() < spec.edge_density ? rng.range_u32(spec.weight_min, spec.weight_max)
                                                  : 0;
        }
        if (cell > 0 && spec.weight_jitter > 0) {
            const std::int64_t delta =
                std::int64_t(rng.range_u32(0, 2 * spec.weight_jitter)) - spec.weight_jitter;
            cell = static_cast<std::uint32_t>(std::max<std::int64_t>(1, std::int64_t(cell) + delta));
        }
    }
    return member;
}

}  // namespace

DatasetIndex synth_generate(const SynthSpec& spec, const std::vector<std::string>& group_names,
                            const std::filesystem::path& out_dir) {
    namespace fs = std::filesystem;
    spec.validate();
    if (group_names.empty()) throw std::invalid_argument("synth requires at least one group");

    const std::size_t dim = group_names.size();
    const Rng root(spec.seed);
    const Rng family_root = root.split("family");
    const Rng benign_root = root.split("benign");

    fs::create_directories(out_dir / "families");
    fs::create_directories(out_dir / "benign");

    for (int f = 0; f < spec.family_count; ++f) {
        const std::string family_name = "fam" + zero_pad(f, 3);
        const fs::path family_dir = out_dir / "families" / family_name;
        fs::create_directories(family_dir);

        Rng family_rng = family_root.split(std::uint64_t(f));
        const SquareMatrix<std::uint32_t> base = draw_base(family_rng, dim, spec);

        for (int m = 0; m < spec.members_per_family; ++m) {
            Rng member_rng = family_rng.split("member").split(std::uint64_t(m));
            GrdMatrix sample{mutate(base, member_rng, spec), group_names};
            save_grd(family_dir / ("m" + zero_pad(m, 3) + ".grd"), sample);
        }
    }

    for (int b = 0; b < spec.benign_count; ++b) {
        Rng benign_rng = benign_root.split(std::uint64_t(b));
        GrdMatrix sample{draw_base(benign_rng, dim, spec), group_names};
        save_grd(out_dir / "benign" / ("b" + zero_pad(b, 3) + ".grd"), sample);
    }

    return index_dataset(out_dir);
}

}  // namespace scdg
