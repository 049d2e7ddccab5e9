#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace dkatl
{

// Dense integer handles into a Model's name tables.
template < class Tag >
struct Id
{
    std::uint32_t value = 0;

    constexpr Id() = default;
    constexpr explicit Id( std::uint32_t v ) : value{ v } {}

    friend constexpr auto operator<=>( Id, Id ) = default;
};

using AgentId = Id< struct AgentTag >;
using StateId = Id< struct StateTag >;
using ActionId = Id< struct ActionTag >;
using PropId = Id< struct PropTag >;

inline constexpr std::size_t max_agents = 64;

// A nonempty-by-convention set of agents, stored as a bitmask over AgentId.
class Coalition
{
    std::uint64_t _bits = 0;

public:
    constexpr Coalition() = default;
    constexpr explicit Coalition( std::uint64_t bits ) : _bits{ bits } {}

    static Coalition of( std::initializer_list< std::uint32_t > agents )
    {
        Coalition c;
        for ( auto a : agents )
            c.insert( AgentId{ a } );
        return c;
    }

    static constexpr Coalition all( std::size_t agent_count )
    {
        return Coalition{ agent_count >= 64 ? ~std::uint64_t{ 0 }
                                            : ( std::uint64_t{ 1 } << agent_count ) - 1 };
    }

    [[nodiscard]] constexpr std::uint64_t bits() const { return _bits; }
    [[nodiscard]] constexpr bool empty() const { return _bits == 0; }
    [[nodiscard]] constexpr std::size_t size() const { return std::popcount( _bits ); }

    [[nodiscard]] constexpr bool contains( AgentId a ) const
    {
        return ( _bits >> a.value ) & 1U;
    }

    constexpr void insert( AgentId a ) { _bits |= std::uint64_t{ 1 } << a.value; }

    [[nodiscard]] constexpr bool subset_of( Coalition other ) const
    {
        return ( _bits & ~other._bits ) == 0;
    }

    [[nodiscard]] constexpr bool disjoint( Coalition other ) const
    {
        return ( _bits & other._bits ) == 0;
    }

    [[nodiscard]] constexpr Coalition operator|( Coalition o ) const { return Coalition{ _bits | o._bits }; }
    [[nodiscard]] constexpr Coalition operator&( Coalition o ) const { return Coalition{ _bits & o._bits }; }

    [[nodiscard]] constexpr Coalition complement( std::size_t agent_count ) const
    {
        return Coalition{ all( agent_count ).bits() & ~_bits };
    }

    // Members in increasing id order.
    [[nodiscard]] std::vector< AgentId > members() const
    {
        std::vector< AgentId > out;
        for ( auto b = _bits; b != 0; b &= b - 1 )
            out.emplace_back( static_cast< std::uint32_t >( std::countr_zero( b ) ) );
        return out;
    }

    friend constexpr auto operator<=>( Coalition, Coalition ) = default;
};

inline std::size_t hash_combine( std::size_t seed, std::size_t v )
{
    return seed ^ ( v + 0x9e3779b97f4a7c15ULL + ( seed << 6 ) + ( seed >> 2 ) );
}

} // namespace dkatl

template < class Tag >
struct std::hash< dkatl::Id< Tag > >
{
    std::size_t operator()( dkatl::Id< Tag > id ) const noexcept { return std::hash< std::uint32_t >{}( id.value ); }
};
