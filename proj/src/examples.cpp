#include <cmath>
#include <initializer_list>

#include "cznd/experiments.hpp"

namespace cznd {

namespace {

using Rows = std::initializer_list<std::initializer_list<double>>;

ComplexMatrix cmat(Rows re, Rows im) {
  const auto rows = static_cast<Index>(re.size());
  const auto cols = static_cast<Index>(re.begin()->size());
  ComplexMatrix out(rows, cols);
  Index r = 0;
  for (auto re_row = re.begin(), im_row = im.begin(); re_row != re.end(); ++re_row, ++im_row, ++r) {
    Index c = 0;
    for (auto x = re_row->begin(), y = im_row->begin(); x != re_row->end(); ++x, ++y, ++c) {
      out(r, c) = {*x, *y};
    }
  }
  return out;
}

// sin, cos, sin(2t), cos(2t) and the derivative of cos*sin (= c^2 - s^2).
struct Trig {
  explicit Trig(double t)
      : s(std::sin(t)), c(std::cos(t)), s2(std::sin(2 * t)), c2(std::cos(2 * t)), dcs(c * c - s * s) {}
  double s, c, s2, c2, dcs;
};

// F(τ) of Examples 1 and 3: [[d1+s, c], [c, d2+s]] + i[[c, s], [s, c]].
ComplexMatrix two_by_two_f(double t, double d1, double d2) {
  const Trig g(t);
  return cmat({{d1 + g.s, g.c}, {g.c, d2 + g.s}}, {{g.c, g.s}, {g.s, g.c}});
}

ComplexMatrix two_by_two_df(double t) {
  const Trig g(t);
  return cmat({{g.c, -g.s}, {-g.s, g.c}}, {{-g.s, g.c}, {g.c, -g.s}});
}

}  // namespace

TimeVariantProblem example1() {
  ProblemDefinition def;
  def.name = "example1";
  def.m = 3;
  def.n = 2;
  def.f = [](double t) { return two_by_two_f(t, 600.0, 400.0); };
  def.df = [](double t) { return two_by_two_df(t); };
  def.a = [](double t) {
    const Trig g(t);
    return cmat({{g.s, g.c, 1}, {-g.c, 0, -g.s}, {1, 0, 1}},
                {{g.c, -g.s, 0}, {g.s, 1, g.c}, {0, 1, 0}});
  };
  def.da = [](double t) {
    const Trig g(t);
    return cmat({{g.c, -g.s, 0}, {g.s, 0, -g.c}, {0, 0, 0}},
                {{-g.s, -g.c, 0}, {g.c, 0, -g.s}, {0, 0, 0}});
  };
  def.c = [](double t) {
    const Trig g(t);
    const double s = g.s, c = g.c;
    return cmat(
        {{600 * s - 4 * c * s + 2 * c * c - 1, g.s2 + 400 * c - 2},
         {s - 599 * c - c * s + c * c, -c - 399 * s + c * s + c * c - 1},
         {599 - s + c, -c + s}},
        {{600 * s - 2 * c * c + 2, g.s2 + 400 * c + 1},
         {-600 * c - 3 * c * s + c * c - 2, -400 * s - 3 * c * s - c * c - 1},
         {s + 3 * c, c + 3 * s + 401}});
  };
  def.dc = [](double t) {
    const Trig g(t);
    const double s = g.s, c = g.c;
    return cmat(
        {{600 * c - 4 * g.dcs - 4 * c * s, 2 * g.c2 - 400 * s},
         {c + 599 * s - g.dcs - 2 * c * s, s - 399 * c + g.dcs - 2 * c * s},
         {-c - s, s + c}},
        {{600 * c + 4 * c * s, 2 * g.c2 - 400 * s},
         {600 * s - 3 * g.dcs - 2 * c * s, -400 * c - 3 * g.dcs + 2 * c * s},
         {c - 3 * s, -s + 3 * c}});
  };
  def.exact = [](double t) {
    const Trig g(t);
    return cmat({{g.s, g.c}, {-g.c, -g.s}, {1, 0}}, {{g.s, g.c}, {-g.c, -g.s}, {0, 1}});
  };
  return TimeVariantProblem(std::move(def));
}

TimeVariantProblem example2() {
  ProblemDefinition def;
  def.name = "example2";
  def.m = 2;
  def.n = 3;
  def.f = [](double t) {
    const Trig g(t);
    const double s = g.s, c = g.c;
    return cmat({{400 + s, c, c}, {c, 200 + s, c}, {c, c, 300 + s}},
                {{c, s, s}, {s, c, s}, {s, s, c}});
  };
  def.df = [](double t) {
    const Trig g(t);
    const double s = g.s, c = g.c;
    return cmat({{c, -s, -s}, {-s, c, -s}, {-s, -s, c}}, {{-s, c, c}, {c, -s, c}, {c, c, -s}});
  };
  def.a = [](double t) {
    const Trig g(t);
    return cmat({{g.s, -g.c}, {g.c, -g.s}}, {{g.c, -g.s}, {g.s, -g.c}});
  };
  def.da = [](double t) {
    const Trig g(t);
    return cmat({{g.c, g.s}, {-g.s, -g.c}}, {{-g.s, -g.c}, {g.c, g.s}});
  };
  def.c = [](double t) {
    const Trig g(t);
    const double s = g.s, c = g.c;
    return cmat(
        {{c + 400 * s - 4 * c * s, -2 + 201 * c, s + 2 * c * c + 299},
         {-400 * c - s - 4 * c * s, -201 * s - 2, -c - 2 * c * c + 1}},
        {{401 * s + 2, s + 4 * c * s + 200 * c, -c + 2 * c * s + 1},
         {-399 * c - 2, c - 200 * s - 4 * c * s, -s - 2 * c * s + 299}});
  };
  def.dc = [](double t) {
    const Trig g(t);
    const double s = g.s, c = g.c;
    return cmat(
        {{-s + 400 * c - 4 * g.dcs, -201 * s, c - 4 * c * s},
         {400 * s - c - 4 * g.dcs, -201 * c, s + 4 * c * s}},
        {{401 * c, c + 4 * g.dcs - 200 * s, s + 2 * g.dcs},
         {399 * s, -s - 200 * c - 4 * g.dcs, -c - 2 * g.dcs}});
  };
  def.exact = [](double t) {
    const Trig g(t);
    return cmat({{g.s, g.c, 1}, {-g.c, -g.s, 0}}, {{g.s, g.c, 0}, {-g.c, -g.s, 1}});
  };
  return TimeVariantProblem(std::move(def));
}

TimeVariantProblem example3() {
  ProblemDefinition def;
  def.name = "example3";
  def.m = 2;
  def.n = 2;
  def.f = [](double t) { return two_by_two_f(t, 6.0, 4.0); };
  def.df = [](double t) { return two_by_two_df(t); };
  def.a = [](double t) {
    const Trig g(t);
    return cmat({{g.c, g.s}, {-g.s, g.c}}, {{g.s, g.c}, {g.c, -g.s}});
  };
  def.da = [](double t) {
    const Trig g(t);
    return cmat({{-g.s, g.c}, {-g.c, -g.s}}, {{g.c, -g.s}, {-g.s, -g.c}});
  };
  def.c = [](double t) {
    const Trig g(t);
    const double s = g.s, c = g.c;
    return cmat({{2 * c * c - 2 * c * s + 6 * s, 4 * c + 2 * c * s - 2 * c * c},
                 {-2 * g.s2 - 6 * c + 2, 2 * g.s2 - 4 * s - 2}},
                {{2 * c * c + 2 * c * s + 6 * s, 4 * c + 2 * c * s + 2 * c * c},
                 {-2 * g.s2 - 6 * c - 2, -2 * g.s2 - 4 * s - 2}});
  };
  def.dc = [](double t) {
    const Trig g(t);
    const double s = g.s, c = g.c;
    return cmat({{-4 * c * s - 2 * g.dcs + 6 * c, -4 * s + 2 * g.dcs + 4 * c * s},
                 {-4 * g.c2 + 6 * s, 4 * g.c2 - 4 * c}},
                {{-4 * c * s + 2 * g.dcs + 6 * c, -4 * s + 2 * g.dcs - 4 * c * s},
                 {-4 * g.c2 + 6 * s, -4 * g.c2 - 4 * c}});
  };
  def.exact = [](double t) {
    const Trig g(t);
    return cmat({{g.s, g.c}, {-g.c, -g.s}}, {{g.s, g.c}, {-g.c, -g.s}});
  };
  return TimeVariantProblem(std::move(def));
}

}  // namespace cznd
