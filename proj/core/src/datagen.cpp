// Copyright 2026 The snnfc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "snnfc/datagen.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>

#include "snnfc/dataset.hpp"
#include "snnfc/errors.hpp"
#include "snnfc/prng.hpp"

namespace snnfc {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write file: " + path);
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// car: two-level monotone hierarchy price(buying, maint) x tech(comfort, safety)
// ---------------------------------------------------------------------------

int synth_car_label(int buying, int maint, int doors, int persons, int lug_boot, int safety) {
  // Value indices ascend from worst to best (vhigh=0 ... low=3, etc.).
  int comfort;
  if (persons == 0) {
    comfort = 0;  // two-seater: unusable for a family
  } else if (doors == 0 && lug_boot == 0) {
    comfort = 0;  // cramped two-door with a tiny boot
  } else {
    const int score = doors + lug_boot + (persons - 1);
    if (score >= 5 || (score == 4 && lug_boot >= 1))
      comfort = 3;
    else if (score >= 3)
      comfort = 2;
    else
      comfort = 1;
  }

  int tech;
  if (safety == 0 || comfort == 0) {
    tech = 0;
  } else if (safety == 1) {
    tech = comfort >= 3 ? 2 : 1;
  } else {
    tech = comfort;  // 1..3
  }

  static constexpr int kPrice[4][4] = {
      {0, 0, 0, 1},  // buying vhigh
      {0, 0, 1, 1},  // buying high
      {0, 1, 1, 2},  // buying med
      {0, 1, 2, 2},  // buying low
  };
  const int price = kPrice[buying][maint];

  static constexpr int kCar[3][4] = {
      {0, 0, 1, 1},  // price high
      {0, 1, 1, 3},  // price medium
      {0, 1, 2, 3},  // price low
  };
  return kCar[price][tech];
}

size_t synth_car(const std::string& path) {
  FeatureSchema schema = car_schema();
  auto out = open_out(path);
  size_t rows = 0;
  // Token lists exclude the trailing "?" missing category.
  auto tokens = [&](int key) { return schema.keys[static_cast<size_t>(key)].values; };
  for (int b = 0; b < 4; ++b)
    for (int m = 0; m < 4; ++m)
      for (int d = 0; d < 4; ++d)
        for (int p = 0; p < 3; ++p)
          for (int l = 0; l < 3; ++l)
            for (int s = 0; s < 3; ++s) {
              const int label = synth_car_label(b, m, d, p, l, s);
              out << tokens(0)[static_cast<size_t>(b)] << ',' << tokens(1)[static_cast<size_t>(m)]
                  << ',' << tokens(2)[static_cast<size_t>(d)] << ','
                  << tokens(3)[static_cast<size_t>(p)] << ',' << tokens(4)[static_cast<size_t>(l)]
                  << ',' << tokens(5)[static_cast<size_t>(s)] << ','
                  << schema.class_names[static_cast<size_t>(label)] << '\n';
              ++rows;
            }
  return rows;
}

// ---------------------------------------------------------------------------
// nursery: additive need score with compounding/relief interaction terms
// ---------------------------------------------------------------------------

int synth_nursery_label(int parents, int has_nurs, int form, int children, int housing,
                        int finance, int social, int health) {
  if (health == 2) return 0;  // not_recom

  const int employ = parents + has_nurs;  // 0..6
  const int strain = (form >= 1) + (form >= 3) + (children >= 2) + (housing >= 1) +
                     (housing >= 2) + (finance >= 1) + (social >= 1) + (social >= 2);

  int score = 2 * employ + strain + 4 * health;
  if (parents == 2 && has_nurs >= 3) score += 2;   // compounding employment pressure
  if (housing == 2 && finance == 1) score += 2;    // compounding financial pressure
  if (parents == 0 && has_nurs <= 1 && social == 0) score -= 2;
  if (form == 0 && children <= 1 && housing == 0) score -= 1;

  if (employ == 0 && health == 0 && form == 0 && housing == 0 && finance == 0 && social == 0 &&
      children <= 1)
    return 1;                                  // recommend (two records, as in the original)
  if (health == 0 && score <= 4) return 2;     // very_recom
  if (score >= 14) return 4;                   // spec_prior
  return 3;                                    // priority
}

size_t synth_nursery(const std::string& path) {
  FeatureSchema schema = nursery_schema();
  auto out = open_out(path);
  size_t rows = 0;
  const std::array<int, 8> cards = {3, 5, 4, 4, 3, 2, 3, 3};
  std::array<int, 8> v{};
  for (v[0] = 0; v[0] < cards[0]; ++v[0])
    for (v[1] = 0; v[1] < cards[1]; ++v[1])
      for (v[2] = 0; v[2] < cards[2]; ++v[2])
        for (v[3] = 0; v[3] < cards[3]; ++v[3])
          for (v[4] = 0; v[4] < cards[4]; ++v[4])
            for (v[5] = 0; v[5] < cards[5]; ++v[5])
              for (v[6] = 0; v[6] < cards[6]; ++v[6])
                for (v[7] = 0; v[7] < cards[7]; ++v[7]) {
                  const int label =
                      synth_nursery_label(v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7]);
                  for (size_t k = 0; k < 8; ++k)
                    out << schema.keys[k].values[static_cast<size_t>(v[k])] << ',';
                  out << schema.class_names[static_cast<size_t>(label)] << '\n';
                  ++rows;
                }
  return rows;
}

// ---------------------------------------------------------------------------
// adult: seeded generative sampler with a latent income propensity
// ---------------------------------------------------------------------------

namespace {

struct AdultRow {
  std::string text;
};

AdultRow sample_adult_row(Rng& rng, bool test_file) {
  FeatureSchema schema = adult_schema();
  const auto& edu_values = schema.keys[3].values;     // 16 + "?"
  const auto& marital_values = schema.keys[5].values; // 7 + "?"
  const auto& occ_values = schema.keys[6].values;     // 14 + "?"

  const double skill = rng.next_normal();

  // Education band from skill quantile (higher skill -> more education).
  static constexpr int kEduByBand[8] = {15, 12, 3, 3, 1, 1, 0, 10};  // Preschool..Masters
  static constexpr int kEduNum[16] = {13, 10, 7, 9, 15, 12, 11, 5, 4, 8, 14, 2, 6, 16, 3, 1};
  int band = std::clamp(static_cast<int>((skill + 2.0) / 4.0 * 8.0), 0, 7);
  if (rng.next_double() < 0.25) band = static_cast<int>(rng.next_below(8));
  int edu = kEduByBand[band];
  if (edu == 10 && skill > 1.6 && rng.next_double() < 0.4)
    edu = rng.next_double() < 0.5 ? 13 : 4;  // Doctorate / Prof-school tail
  const int edu_num = kEduNum[edu];

  const int age = std::clamp(static_cast<int>(38.0 + 13.0 * rng.next_normal() + 2.0 * skill), 17, 90);
  const int hours =
      std::clamp(static_cast<int>(40.0 + 10.0 * rng.next_normal() + 3.0 * skill), 1, 99);
  const bool male = rng.next_double() < 0.67;
  const bool married = rng.next_double() <
                       1.0 / (1.0 + std::exp(-(0.09 * (age - 30) + (male ? 0.7 : -0.5))));
  int marital = married ? 0 : (age < 30 ? 2 : static_cast<int>(1 + rng.next_below(4)));

  long capital_gain = 0;
  if (rng.next_double() < 0.08 + 0.02 * skill)
    capital_gain = std::min(99999l, static_cast<long>(std::exp(7.2 + 1.3 * rng.next_double() + 0.4 * skill)));
  long capital_loss = 0;
  if (capital_gain == 0 && rng.next_double() < 0.047)
    capital_loss = 1000 + static_cast<long>(rng.next_below(1500));

  // Latent propensity for the >50K label; the temperature controls how much
  // residual noise the features cannot explain.
  const double z = 1.05 * skill + 0.030 * (age - 38.0) - 0.00042 * (age - 38.0) * (age - 38.0) +
                   0.040 * (hours - 40.0) + (married ? 1.9 : -0.9) + (male ? 0.15 : -0.15) +
                   (capital_gain > 5000 ? 2.4 : 0.0) + (capital_loss > 1800 ? 0.8 : 0.0) - 2.55;
  const double p_high = 1.0 / (1.0 + std::exp(-1.15 * z));
  const bool high_income = rng.next_double() < p_high;

  const int occupation =
      skill > 0.8 ? (rng.next_double() < 0.55 ? 5 : 4)                     // Prof / Exec
                  : static_cast<int>(rng.next_below(12));
  int workclass = rng.next_double() < 0.75 ? 0 : static_cast<int>(1 + rng.next_below(5));
  const int race = rng.next_double() < 0.85 ? 0 : static_cast<int>(1 + rng.next_below(4));
  int relationship;
  if (married)
    relationship = male ? 2 : 0;   // Husband / Wife
  else if (age < 25)
    relationship = 1;              // Own-child
  else
    relationship = rng.next_double() < 0.6 ? 3 : 5;
  const int country = rng.next_double() < 0.9 ? 0 : static_cast<int>(1 + rng.next_below(40));
  const long fnlwgt = 20000 + static_cast<long>(rng.next_below(380000));

  // Missing tokens, roughly at the original rates.
  std::string workclass_tok = schema.keys[1].values[static_cast<size_t>(workclass)];
  std::string occupation_tok = occ_values[static_cast<size_t>(occupation)];
  if (rng.next_double() < 0.056) {
    workclass_tok = "?";
    occupation_tok = "?";
  }
  std::string country_tok = schema.keys[13].values[static_cast<size_t>(country)];
  if (rng.next_double() < 0.018) country_tok = "?";

  std::string label = high_income ? ">50K" : "<=50K";
  if (test_file) label += ".";

  AdultRow row;
  row.text = std::to_string(age) + ", " + workclass_tok + ", " + std::to_string(fnlwgt) + ", " +
             edu_values[static_cast<size_t>(edu)] + ", " + std::to_string(edu_num) + ", " +
             marital_values[static_cast<size_t>(marital)] + ", " + occupation_tok + ", " +
             schema.keys[7].values[static_cast<size_t>(relationship)] + ", " +
             schema.keys[8].values[static_cast<size_t>(race)] + ", " + (male ? "Male" : "Female") +
             ", " + std::to_string(capital_gain) + ", " + std::to_string(capital_loss) + ", " +
             std::to_string(hours) + ", " + country_tok + ", " + label;
  return row;
}

}  // namespace

void synth_adult(const std::string& train_path, const std::string& test_path, uint64_t seed,
                 size_t n_train, size_t n_test) {
  Rng rng(seed);
  {
    auto out = open_out(train_path);
    Rng train_rng = rng.fork(1);
    for (size_t i = 0; i < n_train; ++i) out << sample_adult_row(train_rng, false).text << '\n';
  }
  {
    auto out = open_out(test_path);
    out << "|1x3 Cross validator\n";  // banner line, as in the original test file
    Rng test_rng = rng.fork(2);
    for (size_t i = 0; i < n_test; ++i) out << sample_adult_row(test_rng, true).text << '\n';
  }
}

// ---------------------------------------------------------------------------
// connect4: random legal 8-ply positions scored by open-line counting
// ---------------------------------------------------------------------------

size_t synth_connect4(const std::string& path, uint64_t seed, size_t n_rows) {
  auto out = open_out(path);
  Rng rng(seed);
  size_t written = 0;
  // board[col][row], row 0 = bottom; 0 empty, 1 = x, 2 = o.
  while (written < n_rows) {
    Rng row_rng = rng.fork(written);
    int board[7][6] = {};
    int heights[7] = {};
    bool ok = true;
    for (int move = 0; move < 8 && ok; ++move) {
      int col = -1;
      for (int tries = 0; tries < 32; ++tries) {
        int c = static_cast<int>(row_rng.next_below(7));
        if (heights[c] < 6) {
          col = c;
          break;
        }
      }
      if (col < 0) {
        ok = false;
        break;
      }
      board[col][heights[col]] = (move % 2 == 0) ? 1 : 2;
      ++heights[col];
    }
    if (!ok) continue;

    // Score every length-4 window; open lines with 2 or 3 own pieces count.
    auto window_score = [&](int player) {
      static constexpr int kDirs[4][2] = {{1, 0}, {0, 1}, {1, 1}, {1, -1}};
      int score = 0;
      for (int c = 0; c < 7; ++c)
        for (int r = 0; r < 6; ++r)
          for (const auto& d : kDirs) {
            const int ce = c + 3 * d[0], re = r + 3 * d[1];
            if (ce < 0 || ce >= 7 || re < 0 || re >= 6) continue;
            int own = 0, other = 0;
            for (int i = 0; i < 4; ++i) {
              const int cell = board[c + i * d[0]][r + i * d[1]];
              if (cell == player) ++own;
              else if (cell != 0) ++other;
            }
            if (other == 0) score += own == 3 ? 12 : (own == 2 ? 3 : (own == 1 ? 1 : 0));
          }
      for (int r = 0; r < 6; ++r)
        if (board[3][r] == player) score += 4;  // center column control
      return score;
    };
    const int diff = window_score(1) - window_score(2);

    // Thresholds tuned for roughly the original 66/25/9 class balance
    // (x moves first, so the first player is usually ahead).
    const char* label = diff >= 1 ? "win" : (diff <= -5 ? "loss" : "draw");

    for (int c = 0; c < 7; ++c)
      for (int r = 0; r < 6; ++r)
        out << (board[c][r] == 0 ? 'b' : (board[c][r] == 1 ? 'x' : 'o')) << ',';
    out << label << '\n';
    ++written;
  }
  return written;
}

}  // namespace snnfc
