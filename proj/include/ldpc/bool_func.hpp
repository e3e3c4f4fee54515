#pragma once

#include <cstdint>
#include <vector>

namespace ldpc {

// Boolean function of up to 16 fading-block indicators, stored as a truth
// table over the 2^M fading states.  State a encodes block m as bit m of a
// (1 = block not faded).  Bit a of the table is the function value.
class BoolFunc {
public:
    BoolFunc() = default;

    static BoolFunc zero(int blocks);
    static BoolFunc one(int blocks);
    static BoolFunc var(int block, int blocks);       // indicator of one block
    static BoolFunc full_sum(int blocks);             // OR of all indicators

    int blocks() const { return blocks_; }
    uint32_t table_size() const { return 1u << blocks_; }

    bool bit(uint32_t a) const {
        return (words_[a >> 6] >> (a & 63)) & 1u;
    }
    void set_bit(uint32_t a, bool v);

    BoolFunc& operator&=(const BoolFunc& o);
    BoolFunc& operator|=(const BoolFunc& o);
    friend BoolFunc operator&(BoolFunc a, const BoolFunc& b) { return a &= b; }
    friend BoolFunc operator|(BoolFunc a, const BoolFunc& b) { return a |= b; }

    bool operator==(const BoolFunc&) const = default;

    bool is_zero() const;
    bool is_one() const;
    bool monotone() const;

private:
    explicit BoolFunc(int blocks);
    int blocks_ = 0;
    std::vector<uint64_t> words_;   // unused high bits stay zero
};

inline BoolFunc bf_and(const BoolFunc& a, const BoolFunc& b) { return a & b; }
inline BoolFunc bf_or(const BoolFunc& a, const BoolFunc& b) { return a | b; }

}  // namespace ldpc
