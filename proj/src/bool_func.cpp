#include "ldpc/bool_func.hpp"

#include <stdexcept>

namespace ldpc {

namespace {
void check_blocks(int blocks) {
    if (blocks < 1 || blocks > 16)
        throw std::invalid_argument("BoolFunc: block count must be in [1, 16]");
}
}  // namespace

BoolFunc::BoolFunc(int blocks) : blocks_(blocks) {
    check_blocks(blocks);
    words_.assign((table_size() + 63) / 64, 0);
}

BoolFunc BoolFunc::zero(int blocks) { return BoolFunc(blocks); }

BoolFunc BoolFunc::one(int blocks) {
    BoolFunc f(blocks);
    uint32_t n = f.table_size();
    for (size_t w = 0; w < f.words_.size(); ++w) f.words_[w] = ~0ULL;
    if (n < 64) f.words_[0] = (1ULL << n) - 1;   // keep padding bits zero
    return f;
}

BoolFunc BoolFunc::var(int block, int blocks) {
    check_blocks(blocks);
    if (block < 0 || block >= blocks)
        throw std::invalid_argument("BoolFunc::var: block index out of range");
    BoolFunc f(blocks);
    for (uint32_t a = 0; a < f.table_size(); ++a)
        if ((a >> block) & 1u) f.set_bit(a, true);
    return f;
}

BoolFunc BoolFunc::full_sum(int blocks) {
    BoolFunc f = one(blocks);
    f.set_bit(0, false);   // 1 everywhere except the all-faded state
    return f;
}

void BoolFunc::set_bit(uint32_t a, bool v) {
    uint64_t m = 1ULL << (a & 63);
    if (v) words_[a >> 6] |= m; else words_[a >> 6] &= ~m;
}

BoolFunc& BoolFunc::operator&=(const BoolFunc& o) {
    if (blocks_ != o.blocks_)
        throw std::invalid_argument("BoolFunc: block count mismatch");
    for (size_t w = 0; w < words_.size(); ++w) words_[w] &= o.words_[w];
    return *this;
}

BoolFunc& BoolFunc::operator|=(const BoolFunc& o) {
    if (blocks_ != o.blocks_)
        throw std::invalid_argument("BoolFunc: block count mismatch");
    for (size_t w = 0; w < words_.size(); ++w) words_[w] |= o.words_[w];
    return *this;
}

bool BoolFunc::is_zero() const {
    for (uint64_t w : words_)
        if (w) return false;
    return true;
}

bool BoolFunc::is_one() const { return *this == one(blocks_); }

bool BoolFunc::monotone() const {
    for (uint32_t a = 0; a < table_size(); ++a) {
        if (!bit(a)) continue;
        for (int m = 0; m < blocks_; ++m)
            if (!bit(a | (1u << m))) return false;
    }
    return true;
}

}  // namespace ldpc
