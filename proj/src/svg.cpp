#include "swiss/svg.hpp"

#include <cstdio>
#include <sstream>

namespace swiss {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

}  // namespace

std::string render_cheese_svg(const SwissCheese& cheese) {
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-1.05 -1.05 2.1 2.1\" "
         "width=\"800\" height=\"800\">\n";
  out << "  <rect x=\"-1.05\" y=\"-1.05\" width=\"2.1\" height=\"2.1\" fill=\"#ffffff\"/>\n";

  for (const auto& a : cheese.annuli) {
    if (a.R_n <= 0.0) continue;  // annulus 1 degenerates to the origin
    out << "  <circle class=\"guide\" cx=\"0\" cy=\"0\" r=\"" << num(a.R_n)
        << "\" fill=\"none\" stroke=\"#9999aa\" stroke-width=\"0.004\" "
           "stroke-dasharray=\"0.02 0.02\"/>\n";
  }

  out << "  <circle class=\"unit\" cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" "
         "stroke=\"#202030\" stroke-width=\"0.008\"/>\n";

  for (const auto& a : cheese.annuli) {
    for (const auto& d : a.discs) {
      // Mirror the imaginary axis so the plane reads mathematically (y up).
      out << "  <circle class=\"disc\" cx=\"" << num(d.center.real()) << "\" cy=\""
          << num(-d.center.imag()) << "\" r=\"" << num(d.radius)
          << "\" fill=\"#cc3344\" stroke=\"#cc3344\" stroke-width=\"0.004\"/>\n";
    }
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace swiss
