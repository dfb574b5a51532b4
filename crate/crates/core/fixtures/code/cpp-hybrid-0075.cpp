#include <iostream>
#include <vector>
using namespace std;

long long ds(long long x) {
    long long s = 0;
    while (x > 0) {
        s += x % 10;
        x = x / 10;
    }
    return s;
}

void solve() {
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

long long fib(long long n) {
    if (n < 2) {
        return n;
    }
    long long MOD = 1000000007;
    vector<long long> dp(n + 2);
    dp[1] = 1;
    for (int i = 2; i < n + 1; ++i) {
        dp[i] = (dp[i - 1] + dp[i - 2]) % MOD;
    }
    return dp[n];
}

void solve2() {
    long long n;
    cin >> n;
    cout << fib(n) << endl;
}

int main() {
    solve();
    solve2();
    return 0;
}
