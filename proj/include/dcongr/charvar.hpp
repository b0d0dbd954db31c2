#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dcongr/ideals.hpp"

namespace dcongr {

enum class CycleKind { FullCotangent, ProperCycle, Empty };

struct VerticalComponent {
    std::string point;   // "t=c" for rational points, else the monic factor
    int degree = 1;      // degree of the closed point
    long mult = 0;
    friend bool operator==(const VerticalComponent&, const VerticalComponent&) = default;
};

struct CharCycle {
    CycleKind kind = CycleKind::Empty;
    long horizontal = 0;
    std::vector<VerticalComponent> vertical;  // sorted by (degree, point)

    long total() const;
    bool zero_dimensional() const;
    friend bool operator==(const CharCycle&, const CharCycle&) = default;
    std::string json() const;
};

CharCycle operator+(const CharCycle& a, const CharCycle& b);
std::string kind_name(CycleKind k);

struct CyclicQuotient {
    std::vector<DiffOp> gens;
    int level = 0;
};

struct ModuleDescriptor {
    std::vector<CyclicQuotient> summands;
    static ModuleDescriptor cyclic(std::vector<DiffOp> gens, int level);
};

// Cycle of D/(P) read from nbar and the reduced dominant coefficient.
CharCycle principal_cycle(const DiffOp& p);
CharCycle char_cycle(const CyclicQuotient& m, const IdealOptions& opt = {});
CharCycle char_cycle(const ModuleDescriptor& m, const IdealOptions& opt = {});
bool is_holonomic(const ModuleDescriptor& m, const IdealOptions& opt = {});
long length_bound(const ModuleDescriptor& m, const IdealOptions& opt = {});
// Rank when the cycle is purely horizontal; nullopt means NotAConnection.
std::optional<long> connection_rank(const ModuleDescriptor& m, const IdealOptions& opt = {});

}  // namespace dcongr
