#include <iostream>
#include <vector>

// Greatest common divisor of two numbers.
long long gcd(long long a, long long b) {
    while (b != 0) {
        long long temp = a % b;
        a = b;
        b = temp;
    }
    return a;
}

// Greatest common divisor of all elements.
long long gcdOfArray(const std::vector<long long>& nums) {
    if (nums.size() == 0) {
        return 0;
    }
    long long result = 0;
    for (int i = 0; i < nums.size(); ++i) {
        result = gcd(result, nums[i]);
    }
    return result;
}

// Read one input block and print the answer.
void solve() {
    long long n;
    std::cin >> n;
    std::vector<long long> nums(n);
    for (int i = 0; i < n; ++i) {
        std::cin >> nums[i];
    }

    std::cout << gcdOfArray(nums) << std::endl;
}

// Return the sum of the elements that satisfy the filter.
long long sumMatching(const std::vector<long long>& nums) {
    if (nums.size() == 0) {
        return 0;
    }
    long long total = 0;
    for (int i = 0; i < nums.size(); ++i) {
        if (nums[i] % 5 == 1) {
            total += nums[i];
        }
    }

    return total;
}

// Read one input block and print the answer.
void solve2() {
    long long n;
    std::cin >> n;
    std::vector<long long> nums(n);
    for (int i = 0; i < n; ++i) {
        std::cin >> nums[i];
    }

    std::cout << sumMatching(nums) << std::endl;
}

// Number of pairs whose sum equals the target.
long long countPairs(const std::vector<long long>& nums, long long target) {
    if (nums.size() == 0) {
        return 0;
    }
    long long count = 0;
    for (int i = 0; i < nums.size(); ++i) {
        for (int j = i + 1; j < nums.size(); ++j) {
            if (nums[i] + nums[j] == target) {
                ++count;
            }
        }
    }

    return count;
}

// Read one input block and print the answer.
void solve3() {
    long long n;
    std::cin >> n;
    std::vector<long long> nums(n);
    for (int i = 0; i < n; ++i) {
        std::cin >> nums[i];
    }

    long long target;
    std::cin >> target;

    std::cout << countPairs(nums, target) << std::endl;
}

// Sum of the decimal digits of a number.
long long digitSum(long long num) {
    long long total = 0;
    while (num > 0) {
        total += num % 10;
        num = num / 10;
    }
    return total;
}

// Read one input block and print the answer.
void solve4() {
    long long n;
    std::cin >> n;
    long long result = 0;
    for (int i = 0; i < n; ++i) {
        long long num;
        std::cin >> num;
        result += digitSum(num);
    }

    std::cout << result << std::endl;
}

int main() {
    solve();
    solve2();
    solve3();
    solve4();
    return 0;
}
