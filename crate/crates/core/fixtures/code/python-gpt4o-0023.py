def fibonacci(n: int) -> int:
    """Return the n-th Fibonacci number modulo a prime."""
    if n < 2:
        return n
    MOD = 998244353
    dp = [0] * (n + 2)
    dp[1] = 1
    for i in range(2, n + 1):
        dp[i] = (dp[i - 1] + dp[i - 2]) % MOD

    return dp[n]


def main():
    n = int(input())

    print(fibonacci(n))


if __name__ == "__main__":
    main()
