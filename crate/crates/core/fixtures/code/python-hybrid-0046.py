def count_pairs(nums, target):
    """Number of pairs whose sum equals the target."""
    if len(nums) == 0:
        return 0
    # Check every unordered pair
    count = 0
    for i in range(len(nums)):
        for j in range(i + 1, len(nums)):
            if nums[i] + nums[j] == target:
                count += 1

    return count


def solve():
    """Read one input block and print the answer."""
    # Read the input
    n = int(input())
    nums = list(map(int, input().split()))

    target = int(input())

    result = count_pairs(nums, target)
    # Output the answer
    print(result)


def sum_matching(nums):
    """Return the sum of the elements that satisfy the filter."""
    if len(nums) == 0:
        return 0
    # Accumulate the values that match the condition
    total = 0
    for i in range(len(nums)):
        if nums[i] % 4 == 2:
            total += nums[i]

    return total


def solve2():
    """Read one input block and print the answer."""
    # Read the input
    n = int(input())
    nums = list(map(int, input().split()))

    result = sum_matching(nums)
    # Output the answer
    print(result)


def fibonacci(n):
    """Return the n-th Fibonacci number modulo a prime."""
    if n < 2:
        return n
    # Bottom-up dynamic programming
    MOD = 998244353
    dp = [0] * (n + 2)
    dp[1] = 1
    for i in range(2, n + 1):
        dp[i] = (dp[i - 1] + dp[i - 2]) % MOD

    return dp[n]


def solve3():
    """Read one input block and print the answer."""
    # Read the input
    n = int(input())

    result = fibonacci(n)
    # Output the answer
    print(result)


def main():
    solve()
    solve2()
    solve3()


if __name__ == "__main__":
    main()
