def lower_bound(nums, target):
    """Index of the first element that is not less than the target."""
    left = 0
    right = len(nums)
    while left < right:
        mid = (left + right) // 2
        if nums[mid] < target:
            left = mid + 1
        else:
            right = mid
    return left


def solve():
    """Read one input block and print the answer."""
    n = int(input())
    nums = list(map(int, input().split()))
    q = int(input())
    for i in range(q):
        target = int(input())
        print(lower_bound(nums, target))


def fibonacci(n):
    """Return the n-th Fibonacci number modulo a prime."""
    if n < 2:
        return n
    MOD = 998244353
    dp = [0] * (n + 2)
    dp[1] = 1
    for i in range(2, n + 1):
        dp[i] = (dp[i - 1] + dp[i - 2]) % MOD
    return dp[n]


def solve2():
    """Read one input block and print the answer."""
    n = int(input())
    print(fibonacci(n))


def count_pairs(nums, target):
    """Number of pairs whose sum equals the target."""
    if len(nums) == 0:
        return 0
    count = 0
    for i in range(len(nums)):
        for j in range(i + 1, len(nums)):
            if nums[i] + nums[j] == target:
                count += 1
    return count


def solve3():
    """Read one input block and print the answer."""
    n = int(input())
    nums = list(map(int, input().split()))
    target = int(input())
    print(count_pairs(nums, target))


solve()
solve2()
solve3()
