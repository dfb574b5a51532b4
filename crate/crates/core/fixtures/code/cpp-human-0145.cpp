#include <iostream>
#include <vector>
using namespace std;

int fib(int n) {
    if (n < 2) {
        return n;
    }
    // Bottom-up dynamic programming
    int MOD = 998244353 ;
    vector<int> dp(n + 2) ;
    dp[1]  = 1;
    for(int i = 2; i < n + 1; ++i) {
        dp[i] = (dp[i - 1] + dp[i - 2]) % MOD;
    }

    return dp[n];
}


int main() {
    // Read the input
    int n;
    cin >> n;

    int vx = fib(n );
    // Output the answer
    cout << vx << endl;
    return 0;
}
