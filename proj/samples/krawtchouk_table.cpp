// Print the Krawtchouk table Q_l(m) for small (q, d): krawtchouk_table [q] [d]
#include <cstdlib>
#include <iostream>

#include "zqwalk/krawtchouk.hpp"

int main(int argc, char** argv) {
  const int q = argc > 1 ? std::atoi(argv[1]) : 3;
  const int d = argc > 2 ? std::atoi(argv[2]) : 2;
  try {
    const auto table = zqwalk::MvkTable::build(q, d);
    for (std::size_t li = 0; li < table.indices().size(); ++li) {
      std::cout << "l = (" << zqwalk::format_vector(table.indices()[li].values()) << ")\n";
      for (std::size_t mi = 0; mi < table.states().size(); ++mi) {
        const auto v = table(li, mi);
        std::cout << "  m = (" << zqwalk::format_vector(table.states()[mi].counts()) << ")  " << v.real() << ' '
                  << v.imag() << '\n';
      }
    }
  } catch (const zqwalk::Error& e) {
    std::cerr << e.what() << '\n';
    return zqwalk::exit_code(e.kind());
  }
}
