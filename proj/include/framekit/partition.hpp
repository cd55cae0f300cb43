#pragma once

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include "framekit/errors.hpp"

namespace framekit {

/// Disjoint cover of {0..count-1} by non-empty blocks of indices.
class Partition {
public:
    Partition(std::size_t count, std::vector<std::vector<std::size_t>> blocks)
        : count_(count), blocks_(std::move(blocks)) {
        validate();
    }

    /// Contiguous blocks of `block_size` (last one possibly smaller).
    static Partition contiguous(std::size_t count, std::size_t block_size) {
        if (block_size == 0) throw InvalidPartition("block size must be positive");
        std::vector<std::vector<std::size_t>> blocks;
        for (std::size_t start = 0; start < count; start += block_size) {
            std::vector<std::size_t> b;
            for (std::size_t i = start; i < std::min(start + block_size, count); ++i)
                b.push_back(i);
            blocks.push_back(std::move(b));
        }
        return Partition(count, std::move(blocks));
    }

    static Partition singletons(std::size_t count) { return contiguous(count, 1); }

    /// Parse "0,1,2;3,4;5" into blocks.
    static Partition parse(std::size_t count, const std::string& spec) {
        std::vector<std::vector<std::size_t>> blocks;
        std::stringstream outer(spec);
        std::string block_text;
        while (std::getline(outer, block_text, ';')) {
            std::vector<std::size_t> block;
            std::stringstream inner(block_text);
            std::string token;
            while (std::getline(inner, token, ',')) {
                if (token.empty()) continue;
                try {
                    block.push_back(static_cast<std::size_t>(std::stoull(token)));
                } catch (const std::exception&) {
                    throw InvalidPartition("cannot parse index '" + token + "'");
                }
            }
            if (!block.empty()) blocks.push_back(std::move(block));
        }
        return Partition(count, std::move(blocks));
    }

    std::size_t count() const { return count_; }
    std::size_t block_count() const { return blocks_.size(); }
    const std::vector<std::size_t>& block(std::size_t j) const { return blocks_[j]; }
    const std::vector<std::vector<std::size_t>>& blocks() const { return blocks_; }

    std::size_t max_block_size() const {
        std::size_t m = 0;
        for (const auto& b : blocks_) m = std::max(m, b.size());
        return m;
    }

    std::string to_string() const {
        std::string s;
        for (std::size_t j = 0; j < blocks_.size(); ++j) {
            if (j) s += ';';
            for (std::size_t i = 0; i < blocks_[j].size(); ++i) {
                if (i) s += ',';
                s += std::to_string(blocks_[j][i]);
            }
        }
        return s;
    }

private:
    void validate() const {
        std::vector<bool> seen(count_, false);
        std::size_t total = 0;
        for (const auto& b : blocks_) {
            if (b.empty()) throw InvalidPartition("empty block");
            for (std::size_t i : b) {
                if (i >= count_)
                    throw InvalidPartition("index " + std::to_string(i) + " out of range " +
                                           std::to_string(count_));
                if (seen[i]) throw InvalidPartition("index " + std::to_string(i) + " repeated");
                seen[i] = true;
                ++total;
            }
        }
        if (total != count_) throw InvalidPartition("blocks do not cover every index");
    }

    std::size_t count_;
    std::vector<std::vector<std::size_t>> blocks_;
};

/// Blocks over an arbitrary subset (not necessarily covering 0..M-1): used
/// when an inequality is checked on a sub-family.  Validates that the blocks
/// partition exactly the given subset.
inline void require_partition_of_subset(const std::vector<std::size_t>& subset,
                                        const std::vector<std::vector<std::size_t>>& blocks) {
    std::vector<std::size_t> flattened;
    for (const auto& b : blocks) {
        if (b.empty()) throw InvalidPartition("empty block");
        flattened.insert(flattened.end(), b.begin(), b.end());
    }
    std::vector<std::size_t> sorted_subset = subset;
    std::sort(sorted_subset.begin(), sorted_subset.end());
    std::sort(flattened.begin(), flattened.end());
    if (std::adjacent_find(flattened.begin(), flattened.end()) != flattened.end())
        throw InvalidPartition("repeated index across blocks");
    if (flattened != sorted_subset)
        throw InvalidPartition("blocks do not partition the subset");
}

} // namespace framekit
