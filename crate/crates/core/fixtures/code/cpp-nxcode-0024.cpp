#include <iostream>
#include <vector>
using namespace std;

long long gcd(long long a2, long long b) {
    while (b != 0) {
        long long t = a2 % b;
        a2 = b;
        b = t;
    }
    return a2;
}

long long all_gcd(const vector<long long>& a) {
    long long g = 0;
    for (int i = 0; i < a.size(); ++i) {
        g = gcd(g, a[i]);
    }
    return g;
}

void solve() {
    long long n;
    cin >> n;
    vector<long long> a(n);
    for (int i = 0; i < n; ++i) {
        cin >> a[i];
    }
    cout << all_gcd(a) << endl;
}

long long ds(long long x) {
    long long s = 0;
    while (x > 0) {
        s += x % 10;
        x = x / 10;
    }
    return s;
}

void solve2() {
    long long n;
    cin >> n;
    long long ans = 0;
    for (int i = 0; i < n; ++i) {
        long long x;
        cin >> x;
        ans += ds(x);
    }
    cout << ans << endl;
}

int main() {
    solve();
    solve2();
    return 0;
}
