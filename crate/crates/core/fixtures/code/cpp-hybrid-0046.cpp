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

long long calc(const vector<long long>& a) {
    long long s = 0;
    for (int i = 0; i < a.size(); ++i) {
        if (a[i] % 3 == 1) {
            s += a[i];
        }
    }
    return s;
}

void solve2() {
    long long n;
    cin >> n;
    vector<long long> a(n);
    for (int i = 0; i < n; ++i) {
        cin >> a[i];
    }
    cout << calc(a) << endl;
}

long long kadane(const vector<long long>& a) {
    long long mx = a[0];
    long long cur = 0;
    for (int i = 0; i < a.size(); ++i) {
        cur += a[i];
        if (cur > mx) {
            mx = cur;
        }
        if (cur < 0) {
            cur = 0;
        }
    }
    return mx;
}

void solve3() {
    long long n;
    cin >> n;
    vector<long long> a(n);
    for (int i = 0; i < n; ++i) {
        cin >> a[i];
    }
    cout << kadane(a) << endl;
}

int lb(const vector<long long>& a, long long t) {
    int l = 0;
    int r = a.size();
    while (l < r) {
        int m = (l + r) / 2;
        if (a[m] < t) {
            l = m + 1;
        } else {
            r = m;
        }
    }
    return l;
}

void solve4() {
    long long n;
    cin >> n;
    vector<long long> a(n);
    for (int i = 0; i < n; ++i) {
        cin >> a[i];
    }
    long long q;
    cin >> q;
    for (int i = 0; i < q; ++i) {
        long long t;
        cin >> t;
        cout << lb(a, t) << endl;
    }
}

int main() {
    solve();
    solve2();
    solve3();
    solve4();
    return 0;
}
