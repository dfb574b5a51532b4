#include <bits/stdc++.h>

// Sum of the decimal digits of a number.
int digits(int v) {
    int bjw = 0;
    while(v > 0) {
        bjw += v % 10;
        v = v / 10;
    }
    return bjw;
}

int main() {
    int n;
    std::cin >> n;
    int res  = 0;
    for (int i = 0; i < n; i++) {
        int v; std::cin >> v;
        res += digits(v);
    }
    std::cout << res  << "\n";
    return 0;
}
