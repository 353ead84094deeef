// Generated by tools/gen_brief_pattern.py; do not edit.
#include "facade/features.hpp"

namespace facade {

const std::array<BriefPair, kDescriptorBits> kBriefPattern = {{
    {5, -8, -7, -9},
    {-5, 7, -1, -5},
    {4, -6, 0, 8},
    {-5, -11, -3, 1},
    {-7, -6, -5, 2},
    {0, -8, 4, -4},
    {-2, 9, -2, 0},
    {6, 3, 2, 8},
    {-6, 7, -1, -3},
    {-10, 4, 4, 10},
    {3, -6, -3, 8},
    {-1, -1, 2, 1},
    {-8, 2, -8, -3},
    {7, -7, 6, 3},
    {5, -11, 5, 7},
    {-5, 7, -2, 0},
    {-3, -3, -5, -14},
    {5, -7, 9, 2},
    {-4, 3, 10, -4},
    {-4, -2, -3, 5},
    {-1, -8, 3, 9},
    {-1, 0, -4, 1},
    {-2, -4, -2, 2},
    {-2, -1, -5, -7},
    {-5, 5, -4, -11},
    {5, 9, 1, -8},
    {-5, -3, 4, -3},
    {-3, 1, 6, 6},
    {8, 4, -4, -5},
    {-2, -1, 5, 4},
    {-7, 3, 4, 7},
    {-7, 4, -2, 0},
    {-4, 2, 2, 5},
    {3, -5, -3, 4},
    {-6, 3, 6, -7},
    {-7, -12, -6, 7},
    {10, -6, -2, 4},
    {-8, 2, -8, 1},
    {0, 4, -7, -3},
    {4, -2, -7, 3},
    {-1, -10, 1, 6},
    {-1, 11, 8, -5},
    {-1, 5, 2, -8},
    {-3, 0, 14, 0},
    {7, -6, 15, 0},
    {0, -11, 0, 5},
    {4, -7, -6, 1},
    {6, 7, 3, 2},
    {11, 2, -3, -5},
    {-3, 3, -4, -10},
    {-4, -3, 2, -4},
    {-1, -5, 6, 8},
    {3, -2, -1, -3},
    {-3, -2, 5, -8},
    {0, -13, 5, 9},
    {1, 2, -4, 6},
    {7, -11, 0, -11},
    {-5, 8, 3, -8},
    {6, 10, -2, 4},
    {0, -8, 1, 1},
    {-3, -7, 6, 1},
    {2, -6, -10, -9},
    {0, -7, -1, 4},
    {7, 3, -9, 2},
    {-6, -8, 4, 1},
    {2, 3, 3, 2},
    {-5, -7, -2, 1},
    {6, 3, 12, 1},
    {-5, -8, -10, -5},
    {-3, 6, -12, 3},
    {0, 14, -3, -14},
    {-6, -2, 5, -1},
    {2, -11, 0, 7},
    {6, 3, 6, 1},
    {-11, 7, 4, -5},
    {-6, 5, 5, 1},
    {7, 3, -7, -6},
    {-5, -9, 5, -8},
    {2, -2, -6, 0},
    {4, 0, -1, 3},
    {2, 2, 7, -4},
    {10, -6, 10, -3},
    {2, 0, 2, -8},
    {-9, 0, 4, 5},
    {2, 11, -3, 10},
    {-10, -1, -5, 0},
    {-3, -11, 4, -4},
    {4, 3, 1, -2},
    {1, 2, 3, 2},
    {1, 2, 2, 3},
    {14, -4, 0, 7},
    {9, 1, -3, 2},
    {3, 7, -5, -5},
    {-3, -10, 10, 8},
    {-11, -6, -4, -2},
    {1, -3, -4, -4},
    {2, 2, -10, -4},
    {5, -11, -3, 4},
    {-2, 6, 3, -2},
    {7, 10, 0, 4},
    {8, 3, 11, -3},
    {5, -5, -2, 3},
    {3, 3, -8, 4},
    {-4, -9, 8, 8},
    {-4, -6, 7, 1},
    {-8, 1, -11, 1},
    {-3, -2, 5, -7},
    {-2, -3, 9, -3},
    {1, 10, 6, -3},
    {0, -5, -2, -10},
    {-10, -8, 0, 8},
    {-6, 5, -6, -6},
    {0, 7, 1, -13},
    {-4, 3, -11, 3},
    {0, -10, -1, 0},
    {3, -7, 7, -1},
    {11, 8, 6, -7},
    {4, 4, -3, -3},
    {1, 1, -1, 2},
    {4, -5, -4, -11},
    {-4, -5, -3, -1},
    {5, 1, -5, 2},
    {-2, -2, -6, -2},
    {-4, -11, -4, 3},
    {0, 4, 1, -2},
    {0, -2, 2, 0},
    {-10, -11, 1, 2},
    {6, -1, 1, 8},
    {10, 5, -8, 7},
    {7, -8, -9, 2},
    {-1, 8, -8, -1},
    {-10, 10, 2, 9},
    {-9, -2, 5, 2},
    {-5, 5, -10, 3},
    {-2, 0, 10, 3},
    {2, 6, 9, -4},
    {0, 0, -2, 10},
    {1, -7, -4, 1},
    {-5, -3, 13, 0},
    {-3, -6, 0, 1},
    {-6, -6, -5, 5},
    {3, 10, -7, -4},
    {7, 1, 0, 1},
    {10, 5, 0, -1},
    {-9, 7, 2, 9},
    {-5, -1, -6, 8},
    {-2, -1, -2, 8},
    {2, 1, -3, 3},
    {7, 1, 9, -4},
    {0, 3, 1, 2},
    {-12, -5, 3, -14},
    {2, -8, 5, 6},
    {-4, -2, -1, -3},
    {7, 0, -3, 1},
    {3, -12, -3, 7},
    {-2, 0, -2, 4},
    {-5, 4, 1, 8},
    {-2, 7, -2, 0},
    {1, -12, -4, 6},
    {12, -3, -2, -14},
    {4, 1, -3, 6},
    {2, 1, 8, -1},
    {-7, 1, 4, 2},
    {11, 4, -6, 2},
    {3, 6, 0, 0},
    {3, -2, -4, 4},
    {-1, 4, -3, 7},
    {-6, 6, 5, 1},
    {-9, 0, -12, 1},
    {5, 3, -1, -4},
    {4, 9, 2, -12},
    {-4, -9, -5, 3},
    {-2, 2, 6, -12},
    {-1, -5, 8, 1},
    {6, 2, 5, 0},
    {5, 3, 0, -5},
    {-8, 5, 2, -2},
    {-10, -1, -2, -6},
    {-6, -7, 9, 5},
    {1, -3, -9, -5},
    {-1, -5, 4, 3},
    {1, -2, 0, -12},
    {1, 2, 5, 7},
    {-2, 2, -1, -3},
    {8, -7, -4, 0},
    {-5, -8, -6, -5},
    {1, -1, 4, 1},
    {11, 4, 7, -3},
    {2, -7, -4, 7},
    {1, 0, 8, 7},
    {-8, 7, 2, -8},
    {1, -8, -2, 6},
    {-7, 3, -9, 11},
    {10, 8, 2, -1},
    {5, -6, -3, -7},
    {2, 4, -10, 1},
    {-6, 2, 12, -4},
    {1, 2, -9, -10},
    {-1, 1, -5, -6},
    {-8, -1, -6, -1},
    {10, 2, -7, 0},
    {-9, -7, 6, 1},
    {-3, -9, -4, 7},
    {3, -6, -7, -1},
    {-12, -7, -6, 5},
    {-12, 2, 10, -6},
    {-10, 6, -10, 7},
    {-6, 6, 6, 1},
    {11, -6, 1, 7},
    {1, 4, 1, 1},
    {7, -2, 11, 3},
    {-4, 3, 1, -10},
    {8, 9, -8, -4},
    {0, 7, 3, 0},
    {-5, -5, 7, 2},
    {1, 7, -5, -10},
    {-3, 1, 7, -2},
    {2, 8, -9, 6},
    {2, 9, 6, 3},
    {2, -7, -4, 6},
    {1, -9, 3, 0},
    {8, -6, -11, 10},
    {-10, -7, -2, 1},
    {-8, 7, -2, -1},
    {-6, 1, 3, -5},
    {-4, -7, 9, 5},
    {-7, -1, -8, -3},
    {-2, 2, -9, 2},
    {1, -1, 0, 5},
    {5, -1, -12, 0},
    {-3, 2, 2, 3},
    {-5, -8, -5, 0},
    {5, -3, 4, -8},
    {-5, -2, -1, 2},
    {1, 1, 7, 2},
    {3, 2, 8, -8},
    {-2, -3, -8, 7},
    {0, 9, 2, 0},
    {1, -7, -7, 0},
    {-4, 0, -4, 10},
    {4, -7, -5, -5},
    {7, -1, -3, -6},
    {6, -4, 9, -1},
    {-4, 1, -6, -1},
    {4, -10, -1, 4},
    {4, 3, 12, 2},
    {-4, 6, 11, -9},
    {-7, -2, -4, -1},
    {-3, 5, -9, 6},
    {-1, -2, 7, -7},
    {6, 1, 3, 2},
    {-8, -1, 4, -9},
    {-6, 3, -2, 0},
    {-4, 5, 9, -8},
    {6, -4, 3, -13},
    {9, 1, 1, 1},
}};

}  // namespace facade
