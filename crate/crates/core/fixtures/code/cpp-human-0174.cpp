#include <bits/stdc++.h>
using namespace std ;

void solve() {
    // Read the input
    long long n ;
    cin >> n ;
    vector<long long> xg0(n);
    for (auto &x : xg0 ) cin >> x;

    long long numQueries ; cin >> numQueries;
    for (int i = 0; i < numQueries; i++) {
        long long target; cin >> target ;
        int gy = 0 ;
        int yg = n;
        while (gy < yg) {
            int middle  = (gy + yg) / 2;
            if (xg0[middle] < target) {
                gy = middle + 1;
            } else {
                yg = middle ;
            }
        }
        cout  << gy << "\n";
    }
}

void solve2( ) {
    // Read the input
    long long n; cin >> n;
    vector<long long> kz0(n);
    for (auto &x : kz0) cin >> x ;

    long long currentGcd = 0;
    for (int i = 0; i < n; i++) {
        long long num = kz0[i] ;
        long long y = currentGcd;
        while (y != 0 ) {
            long long vk = num % y;
            num = y;
            y = vk;
        }
        currentGcd = num;
    }
    cout << currentGcd << "\n";
}

int main() {
    ios::sync_with_stdio(false);
    cin.tie(nullptr);
    solve();
    solve2( );
    return 0 ;
}
