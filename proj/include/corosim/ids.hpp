#pragma once

#include <compare>
#include <cstdint>
#include <functional>

namespace corosim {

// Thin typed indices so a vctx id can never be passed where a pctx id is
// expected. -1 means "none".
template <class Tag>
struct Id {
    std::int32_t value = -1;

    constexpr Id() = default;
    constexpr explicit Id(std::int32_t v) : value(v) {}
    constexpr bool valid() const { return value >= 0; }
    constexpr auto operator<=>(const Id&) const = default;
};

using VctxId = Id<struct VctxTag>;
using PctxId = Id<struct PctxTag>;
using KernelId = Id<struct KernelTag>;
using RegionId = Id<struct RegionTag>;
using DeviceId = Id<struct DeviceTag>;
using RequestId = Id<struct RequestTag>;

}  // namespace corosim
