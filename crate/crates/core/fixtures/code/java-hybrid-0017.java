import java.util.Scanner;

public class Main {
    static Scanner sc = new Scanner(System.in);

    public static long collatzSteps(long num) {
        // Iterate the Collatz map until reaching one
        long steps = 0;
        while (num != 1) {
            if (num % 2 == 0) {
                num = num / 2;
            } else {
                num = 3 * num + 1;
            }
            steps++;
        }
        return steps;
    }

    public static void solve() {
        // Read the input
        long n = sc.nextLong();

        long result = collatzSteps(n);
        // Output the answer
        System.out.println(result);
    }

    public static int lowerBound(long[] nums, long target) {
        // Binary search for the first element not less than target
        int left = 0;
        int right = nums.length;
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

    public static void solve2() {
        // Read the input
        long n = sc.nextLong();
        long[] nums = new long[n];
        for (int i = 0; i < n; i++) {
            nums[i] = sc.nextLong();
        }

        long q = sc.nextLong();
        int i = 0;
        while (i < q) {
            long target = sc.nextLong();
            System.out.println(lowerBound(nums, target));
            i++;
        }
    }

    public static long fibonacci(long n) {
        if (n < 2) {
            return n;
        }
        // Bottom-up dynamic programming
        long MOD = 1000000007;
        long[] dp = new long[n + 2];
        dp[1] = 1;
        int i = 2;
        while (i < n + 1) {
            dp[i] = (dp[i - 1] + dp[i - 2]) % MOD;
            i++;
        }

        return dp[n];
    }

    public static void solve3() {
        // Read the input
        long n = sc.nextLong();

        long result = fibonacci(n);
        // Output the answer
        System.out.println(result);
    }

    public static long maxSubarraySum(long[] nums) {
        // Kadane's algorithm
        long maxSum = nums[0];
        long currentSum = 0;
        int i = 0;
        while (i < nums.length) {
            currentSum += nums[i];
            if (currentSum > maxSum) {
                maxSum = currentSum;
            }
            if (currentSum < 0) {
                currentSum = 0;
            }
            i++;
        }

        return maxSum;
    }

    public static void solve4() {
        // Read the input
        long n = sc.nextLong();
        long[] nums = new long[n];
        for (int i = 0; i < n; i++) {
            nums[i] = sc.nextLong();
        }

        long result = maxSubarraySum(nums);
        // Output the answer
        System.out.println(result);
    }

    public static void main(String[] args) {
        solve();
        solve2();
        solve3();
        solve4();
    }
}
