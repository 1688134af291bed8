#pragma once

#include <array>
#include <vector>

// Published top-10 allocations of the three tournaments, with the number of
// entries above 11 counted by hand.
struct TopRow {
  int tournament;
  int rank;
  double points;
  std::array<int, 9> trips;
  int strong_states;
};

inline const std::vector<TopRow>& top10_rows() {
  static const std::vector<TopRow> rows = {
      {1, 1, 166.0, {4, 13, 3, 17, 21, 3, 21, 5, 13}, 5},
      {1, 2, 160.0, {3, 16, 3, 17, 22, 17, 3, 16, 3}, 5},
      {1, 3, 156.5, {2, 16, 1, 17, 23, 16, 2, 22, 1}, 5},
      {1, 4, 151.0, {2, 12, 1, 21, 20, 21, 1, 20, 2}, 5},
      {1, 5, 151.0, {1, 1, 1, 1, 21, 21, 21, 18, 15}, 5},
      {1, 6, 150.5, {13, 5, 21, 13, 6, 13, 4, 21, 4}, 5},
      {1, 7, 149.5, {2, 1, 16, 21, 2, 21, 15, 21, 1}, 5},
      {1, 8, 149.0, {3, 22, 21, 3, 3, 21, 3, 21, 3}, 4},
      {1, 9, 148.0, {12, 4, 21, 3, 21, 3, 3, 21, 12}, 5},
      {1, 10, 147.0, {1, 18, 22, 2, 2, 16, 22, 15, 2}, 5},
      {2, 1, 187.0, {4, 13, 3, 17, 21, 3, 21, 5, 13}, 5},
      {2, 2, 172.5, {12, 4, 21, 3, 21, 3, 3, 21, 12}, 5},
      {2, 3, 172.5, {2, 16, 1, 17, 23, 16, 2, 22, 1}, 5},
      {2, 4, 172.5, {1, 23, 1, 21, 21, 1, 13, 16, 3}, 5},
      {2, 5, 172.0, {2, 21, 2, 16, 21, 1, 16, 21, 0}, 5},
      {2, 6, 169.5, {16, 16, 24, 3, 16, 3, 3, 16, 3}, 5},
      {2, 7, 167.0, {1, 18, 22, 2, 2, 16, 22, 15, 2}, 5},
      {2, 8, 167.0, {2, 3, 12, 21, 24, 21, 12, 3, 2}, 5},
      {2, 9, 166.0, {2, 1, 16, 21, 2, 21, 15, 21, 1}, 5},
      {2, 10, 165.5, {13, 5, 21, 13, 6, 13, 4, 21, 4}, 5},
      {3, 1, 357.0, {2, 22, 3, 14, 22, 17, 15, 4, 1}, 5},
      {3, 2, 351.0, {2, 16, 1, 17, 23, 16, 2, 22, 1}, 5},
      {3, 3, 350.0, {3, 21, 1, 1, 14, 19, 21, 6, 14}, 5},
      {3, 4, 350.0, {4, 13, 3, 17, 21, 3, 21, 5, 13}, 5},
      {3, 5, 349.0, {2, 1, 16, 21, 2, 21, 15, 21, 1}, 5},
      {3, 6, 345.0, {2, 2, 17, 18, 2, 21, 18, 18, 2}, 5},
      {3, 7, 343.5, {2, 21, 16, 21, 1, 2, 0, 16, 21}, 5},
      {3, 8, 343.5, {1, 18, 22, 2, 2, 16, 22, 15, 2}, 5},
      {3, 9, 340.0, {1, 2, 20, 20, 20, 20, 13, 2, 2}, 5},
      {3, 10, 340.0, {21, 2, 2, 2, 21, 2, 14, 15, 21}, 5},
  };
  return rows;
}
