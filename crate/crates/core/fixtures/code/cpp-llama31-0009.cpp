#include <iostream>
#include <vector>
using namespace std;

long long maxSubarraySum(const vector<long long>& nums) {
    // Kadane's algorithm
    long long maxSum = nums[0];
    long long currentSum = 0;
    int i = 0;
    while (i < nums.size()) {
        currentSum += nums[i];
        if (currentSum > maxSum) {
            maxSum = currentSum;
        }
        if (currentSum < 0) {
            currentSum = 0;
        }
        ++i;
    }

    return maxSum;
}

void solve() {
    // Read the input
    long long n;
    cin >> n;
    vector<long long> nums(n);
    for (int i = 0; i < n; ++i) {
        cin >> nums[i];
    }

    long long result = maxSubarraySum(nums);
    // Output the answer
    cout << result << endl;
}

bool isPrime(long long num) {
    if (num < 2) {
        return false;
    }
    // Trial division up to the square root
    long long divisor = 2;
    while (divisor * divisor <= num) {
        if (num % divisor == 0) {
            return false;
        }
        ++divisor;
    }
    return true;
}

long long countPrimes(long long n) {
    long long count = 0;
    int i = 2;
    while (i < n + 1) {
        if (isPrime(i)) {
            ++count;
        }
        ++i;
    }

    return count;
}

void solve2() {
    // Read the input
    long long n;
    cin >> n;

    long long result = countPrimes(n);
    // Output the answer
    cout << result << endl;
}

long long fibonacci(long long n) {
    if (n < 2) {
        return n;
    }
    // Bottom-up dynamic programming
    long long MOD = 998244353;
    vector<long long> dp(n + 2);
    dp[1] = 1;
    int i = 2;
    while (i < n + 1) {
        dp[i] = (dp[i - 1] + dp[i - 2]) % MOD;
        ++i;
    }

    return dp[n];
}

void solve3() {
    // Read the input
    long long n;
    cin >> n;

    long long result = fibonacci(n);
    // Output the answer
    cout << result << endl;
}

int lowerBound(const vector<long long>& nums, long long target) {
    // Binary search for the first element not less than target
    int left = 0;
    int right = nums.size();
    while (left < right) {
        int mid = (left + right) / 2;
        if (nums[mid] < target) {
            left = mid + 1;
        } else {
            right = mid;
        }
    }
    return left;
}

void solve4() {
    // Read the input
    long long n;
    cin >> n;
    vector<long long> nums(n);
    for (int i = 0; i < n; ++i) {
        cin >> nums[i];
    }

    long long q;
    cin >> q;
    int i = 0;
    while (i < q) {
        long long target;
        cin >> target;
        cout << lowerBound(nums, target) << endl;
        ++i;
    }
}

int main() {
    solve();
    solve2();
    solve3();
    solve4();
    return 0;
}
